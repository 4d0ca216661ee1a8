//! Maskit's Fenchel–Nielsen chart for genus 2.
//!
//! The generators `A, B, C, D` are evaluated from their closed forms, and
//! the axis generators `S_i` and pairings `T_i` are words in them. Side `i`
//! of the polygon lies on the axis of `S_i`, from its repelling fixed point
//! `P_i` to its attracting fixed point `Q_{i+1}`.
//!
//! For long boundary lengths the entries grow like `e^β` while the polygon
//! data is O(1), so the whole group is evaluated in double-double. The
//! polygon is then moved to a centred frame before rounding to `f64`: vertex
//! centroid at the origin, and `V_1` on the positive real axis unless the
//! boundary points crowd together, in which case the tightest run starts
//! just above angle zero.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::dd::{product, Cdd, Dd, Mdd};
use crate::hyperbolic::{ccw, reduce_angle, BoundaryPoint, DiskMoebius};
use crate::polygon::MarkedPolygon;
use crate::tolerance;
use crate::{Error, Result};

/// Words for `S_1..S_12`; lowercase letters are inverses.
pub const S_WORDS: [&str; 12] = [
    "cdC", "AC", "ABDa", "a", "db", "CA", "D", "Dacd", "bd", "bAB", "cDCB", "cbaB",
];

/// Words for the pairings `T_1..T_12`.
pub const T_WORDS: [&str; 12] = [
    "C", "cDC", "a", "b", "A", "D", "c", "d", "bAB", "B", "baB", "cdC",
];

/// `ABDA⁻¹C⁻¹D⁻¹CB⁻¹`, which must be the identity.
pub const RELATION: &str = "ABDacdCb";

/// Maskit's coordinates `(α, β, γ, σ, τ, ρ)`. The twists carry a `_t`
/// suffix in code; in JSON they are `sigma`, `tau`, `rho`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FenchelNielsen6 {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    #[serde(rename = "sigma")]
    pub sigma_t: f64,
    #[serde(rename = "tau")]
    pub tau_t: f64,
    #[serde(rename = "rho")]
    pub rho_t: f64,
}

impl FenchelNielsen6 {
    /// Values giving the regular 12-gon: `α = ½ arccosh(1+√3)`, `β = γ = 2α`.
    pub fn regular() -> Self {
        let alpha = 0.5 * (1.0 + 3f64.sqrt()).acosh();
        FenchelNielsen6 {
            alpha,
            beta: 2.0 * alpha,
            gamma: 2.0 * alpha,
            sigma_t: 0.0,
            tau_t: 0.0,
            rho_t: 0.0,
        }
    }

    pub const NAMES: [&'static str; 6] = ["alpha", "beta", "gamma", "sigma", "tau", "rho"];

    pub fn get(&self, name: &str) -> Result<f64> {
        Ok(match name {
            "alpha" => self.alpha,
            "beta" => self.beta,
            "gamma" => self.gamma,
            "sigma" => self.sigma_t,
            "tau" => self.tau_t,
            "rho" => self.rho_t,
            _ => return Err(Error::UnknownParameter(name.to_string())),
        })
    }

    pub fn with(&self, name: &str, value: f64) -> Result<Self> {
        let mut p = *self;
        match name {
            "alpha" => p.alpha = value,
            "beta" => p.beta = value,
            "gamma" => p.gamma = value,
            "sigma" => p.sigma_t = value,
            "tau" => p.tau_t = value,
            "rho" => p.rho_t = value,
            _ => return Err(Error::UnknownParameter(name.to_string())),
        }
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        let all = [self.alpha, self.beta, self.gamma, self.sigma_t, self.tau_t, self.rho_t];
        if all.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidInput("parameters must be finite".into()));
        }
        for (name, x) in [("alpha", self.alpha), ("beta", self.beta), ("gamma", self.gamma)] {
            if x <= 0.0 {
                return Err(Error::InvalidInput(format!("{name} must be positive (got {x})")));
            }
        }
        Ok(())
    }
}

struct Aux {
    cosh_mu: Dd,
    sinh_mu: Dd,
    coth_delta: Dd,
    cosh_delta: Dd,
    sinh_delta: Dd,
}

/// `cosh μ` and `sinh μ` via `cosh μ - 1 = (coth β - 1) cosh σ cosh τ +
/// 2 sinh²((σ+τ)/2)`, which stays accurate as `β → ∞`.
fn mu_dd(p: &FenchelNielsen6) -> Result<(Dd, Dd)> {
    let (b, s, t) = (Dd::new(p.beta), Dd::new(p.sigma_t), Dd::new(p.tau_t));
    let half = ((s + t) * Dd::new(0.5)).sinh();
    let y = b.coth_minus_one() * s.cosh() * t.cosh() + Dd::new(2.0) * half.sqr();
    if !(y.hi >= 0.0) || !y.is_finite() {
        return Err(Error::OutOfDomain {
            what: "arccosh argument of mu",
            value: (y + Dd::ONE).to_f64(),
        });
    }
    Ok((Dd::ONE + y, (y * (Dd::new(2.0) + y)).sqrt()))
}

fn delta_argument(p: &FenchelNielsen6, cosh_mu: Dd, sinh_mu: Dd) -> Dd {
    let a = Dd::new(p.alpha);
    let g = Dd::new(p.gamma);
    let s = Dd::new(p.sigma_t);
    let r = Dd::new(p.rho_t);
    let coth_a = a.cosh() / a.sinh();
    (g.cosh() * cosh_mu - coth_a * g.sinh() * sinh_mu - s.sinh() * r.sinh()) / (s.cosh() * r.cosh())
}

fn aux(p: &FenchelNielsen6) -> Result<Aux> {
    let (cosh_mu, sinh_mu) = mu_dd(p)?;
    let arg = delta_argument(p, cosh_mu, sinh_mu);
    let excess = arg.sqr() - Dd::ONE;
    if !(excess.hi > 0.0) {
        return Err(Error::OutOfDomain {
            what: "arccoth argument of delta",
            value: arg.to_f64(),
        });
    }
    let root = excess.sqrt();
    let sign = if arg.hi < 0.0 { -Dd::ONE } else { Dd::ONE };
    Ok(Aux {
        cosh_mu,
        sinh_mu,
        coth_delta: arg,
        cosh_delta: arg.abs() / root,
        sinh_delta: sign / root,
    })
}

/// `μ = arccosh(coth β cosh σ cosh τ + sinh σ sinh τ)`.
pub fn aux_mu(p: &FenchelNielsen6) -> Result<f64> {
    p.validate()?;
    let (c, s) = mu_dd(p)?;
    Ok((c - Dd::ONE + s).to_f64().ln_1p())
}

/// `δ = arccoth((cosh γ cosh μ - coth α sinh γ sinh μ - sinh σ sinh ρ) /
/// (cosh σ cosh ρ))`.
pub fn aux_delta(p: &FenchelNielsen6, mu: f64) -> Result<f64> {
    p.validate()?;
    let m = Dd::new(mu);
    let arg = delta_argument(p, m.cosh(), m.sinh()).to_f64();
    if arg.abs() <= 1.0 {
        return Err(Error::OutOfDomain {
            what: "arccoth argument of delta",
            value: arg,
        });
    }
    Ok(0.5 * ((arg + 1.0) / (arg - 1.0)).ln())
}

fn c_re(x: Dd) -> Cdd {
    Cdd::real(x)
}

fn c_im(x: Dd) -> Cdd {
    Cdd::imag(x)
}

fn generators(p: &FenchelNielsen6, x: &Aux) -> [Mdd; 4] {
    let a = Dd::new(p.alpha);
    let b = Dd::new(p.beta);
    let g = Dd::new(p.gamma);
    let s = Dd::new(p.sigma_t);
    let t = Dd::new(p.tau_t);
    let r = Dd::new(p.rho_t);

    let ka = a.sinh() / x.sinh_mu;
    let ma = Mdd::new(
        Cdd::new(a.cosh(), ka),
        c_im(-(ka * x.cosh_mu)),
        c_im(ka * x.cosh_mu),
        Cdd::new(a.cosh(), -ka),
    );

    let kb = b.sinh() / t.cosh();
    let mb = Mdd::new(
        Cdd::new(b.cosh(), kb * s.sinh()),
        Cdd::new(kb * s.cosh(), kb * t.sinh()),
        Cdd::new(kb * s.cosh(), -(kb * t.sinh())),
        Cdd::new(b.cosh(), -(kb * s.sinh())),
    );

    let mc = Mdd::new(c_re(g.cosh()), c_im(g.sinh()), c_im(-g.sinh()), c_re(g.cosh()));

    let gs = g + s;
    let kd = x.sinh_delta / r.cosh();
    let diag = r.cosh() * x.coth_delta * kd;
    let md = Mdd::new(
        Cdd::new(diag, -(kd * gs.sinh())),
        Cdd::new(-(kd * gs.cosh()), -(kd * r.sinh())),
        Cdd::new(-(kd * gs.cosh()), kd * r.sinh()),
        Cdd::new(diag, kd * gs.sinh()),
    );
    debug_assert!((diag - x.cosh_delta).abs().to_f64() < 1e-20 * x.cosh_delta.to_f64().max(1.0));
    [ma, mb, mc, md]
}

fn word(letters: &str, gens: &[Mdd; 4]) -> Mdd {
    let ms: Vec<Mdd> = letters
        .chars()
        .map(|ch| {
            let k = "ABCD".find(ch.to_ascii_uppercase()).expect("word letters are A-D");
            if ch.is_ascii_uppercase() {
                gens[k]
            } else {
                // Every generator has determinant one.
                gens[k].adjugate()
            }
        })
        .collect();
    product(&ms)
}

fn to_f64(m: &Mdd) -> DiskMoebius {
    DiskMoebius::from_array(m.to_c64())
}

/// Relative distance from `±Id` after det-1 normalization.
fn dd_identity_distance(m: &Mdd) -> f64 {
    let n = m.normalized();
    let size = (n.a.norm_sqr() + n.b.norm_sqr() + n.c.norm_sqr() + n.d.norm_sqr())
        .sqrt()
        .to_f64();
    let off = |s: Dd| {
        let id = Cdd::real(s);
        ((n.a - id).norm_sqr() + n.b.norm_sqr() + n.c.norm_sqr() + (n.d - id).norm_sqr())
            .sqrt()
            .to_f64()
    };
    off(Dd::ONE).min(off(-Dd::ONE)) / size.max(1.0)
}

/// The genus-2 group for one parameter point.
#[derive(Clone, Debug)]
pub struct Genus2Group {
    pub params: FenchelNielsen6,
    pub mu: f64,
    pub delta: f64,
    pub a: DiskMoebius,
    pub b: DiskMoebius,
    pub c: DiskMoebius,
    pub d: DiskMoebius,
    /// `S_1..S_12` in Maskit's frame.
    pub s: Vec<DiskMoebius>,
    /// `T_1..T_12` in Maskit's frame.
    pub t: Vec<DiskMoebius>,
    s_dd: Vec<Mdd>,
    t_dd: Vec<Mdd>,
    relation_dd: Mdd,
}

impl Genus2Group {
    pub fn build(p: &FenchelNielsen6) -> Result<Self> {
        p.validate()?;
        let x = aux(p)?;
        let gens = generators(p, &x);
        let s_dd: Vec<Mdd> = S_WORDS.iter().map(|w| word(w, &gens)).collect();
        let t_dd: Vec<Mdd> = T_WORDS.iter().map(|w| word(w, &gens)).collect();
        let relation_dd = word(RELATION, &gens);
        let mu = (x.cosh_mu - Dd::ONE + x.sinh_mu).to_f64().ln_1p();
        let cd = x.coth_delta.to_f64();
        let delta = 0.5 * ((x.coth_delta + Dd::ONE) / (x.coth_delta - Dd::ONE)).to_f64().ln();
        debug_assert!(cd.abs() > 1.0);
        let [a, b, c, d] = gens.map(|m| to_f64(&m));
        Ok(Genus2Group {
            params: *p,
            mu,
            delta,
            a,
            b,
            c,
            d,
            s: s_dd.iter().map(to_f64).collect(),
            t: t_dd.iter().map(to_f64).collect(),
            s_dd,
            t_dd,
            relation_dd,
        })
    }

    /// Distance of `ABDA⁻¹C⁻¹D⁻¹CB⁻¹` from the identity, evaluated in
    /// double-double.
    pub fn relation_residual(&self) -> f64 {
        dd_identity_distance(&self.relation_dd)
    }

    /// Largest distance of `T_{σ(i)} T_i` from the identity.
    pub fn pairing_involution_residual(&self) -> f64 {
        (1..=12)
            .map(|i| {
                let s = crate::polygon::sigma(i, 2).expect("genus 2");
                dd_identity_distance(&(self.t_dd[s - 1] * self.t_dd[i - 1]))
            })
            .fold(0.0, f64::max)
    }

    /// Fixed points of every `S_i` in double-double, as
    /// `(repelling P_i, attracting Q_{i+1})`.
    fn axes(&self) -> Result<Vec<(Cdd, Cdd)>> {
        self.s_dd
            .iter()
            .map(|m| {
                let n = m.normalized();
                let tr = (n.a + n.d).abs().to_f64();
                if tr <= 2.0 + tolerance::HYPERBOLIC_MARGIN {
                    return Err(Error::NotHyperbolic { trace: tr });
                }
                let (att, rep) = m
                    .hyperbolic_fixed_points()
                    .ok_or(Error::NotHyperbolic { trace: tr })?;
                Ok((rep, att))
            })
            .collect()
    }

    /// Boundary points `P`, `Q`, pairings `T` and the gaps between
    /// consecutive marks in the centred frame, before any polygon checks.
    pub fn centred_data(&self) -> Result<CentredData> {
        let axes = self.axes()?;
        let mut p: Vec<Cdd> = axes.iter().map(|a| a.0).collect();
        let mut q: Vec<Cdd> = (0..12).map(|k| axes[(k + 11) % 12].1).collect();
        let mut frame = Mdd::identity();
        for _ in 0..3 {
            let c = centroid(&p, &q);
            // z ↦ (z - c)/(1 - c̄z)
            let h = Mdd::new(Cdd::ONE, -c, -c.conj(), Cdd::ONE);
            p = p.iter().map(|z| h.apply(*z).normalized()).collect();
            q = q.iter().map(|z| h.apply(*z).normalized()).collect();
            frame = h * frame;
        }
        let rot = match crowded_start(&p, &q) {
            // Angles just above zero carry the finest absolute resolution.
            Some(z) => (Cdd::from(Complex64::from_polar(1.0, CLUSTER_ANGLE)) * z.conj()).normalized(),
            None => klein_vertex(p[11], q[0], p[0], q[1]).conj().normalized(),
        };
        let r = Mdd::new(rot, Cdd::ZERO, Cdd::ZERO, Cdd::ONE);
        let frame = r * frame;
        let marks: Vec<Cdd> = p.iter().zip(&q).flat_map(|(a, b)| [rot * *a, rot * *b]).collect();
        let gaps = (0..marks.len())
            .map(|k| {
                let w = marks[(k + 1) % marks.len()] * marks[k].conj();
                reduce_angle(w.im.to_f64().atan2(w.re.to_f64()))
            })
            .collect();
        let p = p.iter().map(|z| BoundaryPoint::from_complex((rot * *z).to_c64())).collect();
        let q = q.iter().map(|z| BoundaryPoint::from_complex((rot * *z).to_c64())).collect();
        let inv = frame.adjugate();
        let t = self
            .t_dd
            .iter()
            .map(|m| to_f64(&(frame * *m * inv).normalized()))
            .collect();
        Ok(CentredData { p, q, t, gaps })
    }

    /// The marked 12-gon in the centred frame.
    pub fn build_polygon(&self) -> Result<MarkedPolygon> {
        let d = self.centred_data()?;
        let poly = MarkedPolygon::assemble(2, d.p, d.q, d.t)?.with_gaps(d.gaps)?;
        poly.validate()?;
        Ok(poly)
    }
}

/// Polygon data of a group in the centred frame.
#[derive(Clone, Debug)]
pub struct CentredData {
    pub p: Vec<BoundaryPoint>,
    pub q: Vec<BoundaryPoint>,
    pub t: Vec<DiskMoebius>,
    /// Gaps between consecutive marks `P_1, Q_1, …, Q_12`, from the
    /// double-double points.
    pub gaps: Vec<f64>,
}

const CLUSTER_ANGLE: f64 = 1e-3;

/// First point of the run of boundary points around the smallest gap, when
/// that gap is below `1e-4`.
fn crowded_start(p: &[Cdd], q: &[Cdd]) -> Option<Cdd> {
    let pts: Vec<Cdd> = p.iter().zip(q).flat_map(|(a, b)| [*a, *b]).collect();
    let m = pts.len();
    let angle = |z: &Cdd| z.to_c64().arg();
    let gap = |k: usize| ccw(angle(&pts[k]), angle(&pts[(k + 1) % m]));
    let (mut k, smallest) = (0..m)
        .map(|k| (k, gap(k)))
        .min_by(|x, y| x.1.total_cmp(&y.1))?;
    if smallest >= 1e-4 {
        return None;
    }
    for _ in 0..m {
        let prev = (k + m - 1) % m;
        if gap(prev) >= 1e-2 {
            break;
        }
        k = prev;
    }
    Some(pts[k])
}

/// Vertex where the chords `ab` and `cd` meet, via the Klein model.
fn klein_vertex(a: Cdd, b: Cdd, c: Cdd, d: Cdd) -> Cdd {
    let cross = |x: Cdd, y: Cdd| x.re * y.im - x.im * y.re;
    let r = b - a;
    let s = d - c;
    let t = cross(c - a, s) / cross(r, s);
    let k = a + r.scale(t);
    let lift = (Dd::ONE - k.norm_sqr()).abs().sqrt();
    k.scale((Dd::ONE + lift).recip())
}

/// Poincaré point of the Klein-model mean of the vertices.
fn centroid(p: &[Cdd], q: &[Cdd]) -> Cdd {
    let n = p.len();
    let mut sum = Cdd::ZERO;
    for k in 0..n {
        let v = klein_vertex(p[k], q[(k + 1) % n], p[(k + 1) % n], q[(k + 2) % n]);
        let klein = v.scale(Dd::new(2.0) / (Dd::ONE + v.norm_sqr()));
        sum = sum + klein;
    }
    let kc = sum.scale(Dd::new(n as f64).recip());
    let lift = (Dd::ONE - kc.norm_sqr()).abs().sqrt();
    kc.scale((Dd::ONE + lift).recip())
}

/// Group and polygon for one parameter point.
pub fn build_polygon(p: &FenchelNielsen6) -> Result<MarkedPolygon> {
    Genus2Group::build(p)?.build_polygon()
}

/// Parameter region for sampled checks: `α, β, γ ∈ [0.5, 2.5]`, twists in
/// `[-1, 1]`.
pub fn draw_parameters<R: rand::Rng>(rng: &mut R) -> FenchelNielsen6 {
    FenchelNielsen6 {
        alpha: rng.random_range(0.5..=2.5),
        beta: rng.random_range(0.5..=2.5),
        gamma: rng.random_range(0.5..=2.5),
        sigma_t: rng.random_range(-1.0..=1.0),
        tau_t: rng.random_range(-1.0..=1.0),
        rho_t: rng.random_range(-1.0..=1.0),
    }
}

/// Default seed for sampled parameter sets.
pub const SAMPLE_SEED: u64 = 0x5EED;

/// The first `count` draws from the sampled region whose group exists
/// (draws outside the chart are rejected).
pub fn sample_groups(count: usize, seed: u64) -> Vec<Genus2Group> {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        if let Ok(g) = Genus2Group::build(&draw_parameters(&mut rng)) {
            out.push(g);
        }
    }
    out
}

/// The first `count` draws whose group exists and whose axes bound a
/// marked polygon.
pub fn sample_polygons(count: usize, seed: u64) -> Vec<(FenchelNielsen6, MarkedPolygon)> {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let p = draw_parameters(&mut rng);
        if let Ok(poly) = build_polygon(&p) {
            out.push((p, poly));
        }
    }
    out
}
