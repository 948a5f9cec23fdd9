//! Point sets and polynomials with known incidence counts.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::random::{random_nonzero, RandomPolySpec};
use crate::algebra::{vars, GaussRational, Polynomial, Var, VarSet};
use crate::geometry::{Point, PointSet};
use crate::nullstellensatz::CartesianWitness;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructionInstance {
    pub name: String,
    /// One polynomial, or two for a common-zero count.
    pub system: Vec<Polynomial>,
    /// The polynomial the instance stands for when `system` is a surrogate.
    pub original: Option<Polynomial>,
    pub p: PointSet,
    pub q: PointSet,
    pub predicted_count: u64,
    pub note: String,
    pub witness: Option<CartesianWitness>,
}

fn integer_grid(label: &str, width: i64, height: i64) -> PointSet {
    let coords: Vec<(i64, i64)> = (1..=width).flat_map(|i| (1..=height).map(move |j| (i, j))).collect();
    PointSet::from_integers(label, &coords).expect("grid points are distinct")
}

fn elekes_count(lambda: u64, mu: u64) -> u64 {
    let mut total = 0;
    for i1 in 1..=lambda {
        for i2 in 1..=mu {
            total += (lambda * mu).saturating_sub(i1 * i2);
        }
    }
    total
}

/// `F = xs - y + t` on `[1, λ] x [1, λμ]` and `[1, μ] x [1, λμ]`.
pub fn elekes_grid(lambda: u32, mu: u32) -> ConstructionInstance {
    assert!(lambda >= 1 && mu >= 1);
    let (x, y, s, t) = vars();
    let (l, m) = (lambda as i64, mu as i64);
    ConstructionInstance {
        name: format!("elekes:{lambda},{mu}"),
        system: vec![&(&(&x * &s) - &y) + &t],
        original: None,
        p: integer_grid("P", l, l * m),
        q: integer_grid("Q", m, l * m),
        predicted_count: elekes_count(lambda as u64, mu as u64),
        note: "lines y = s x + t through a grid; count is sum of max(0, λμ - i1 i2)".into(),
        witness: None,
    }
}

/// `F = xs + y^d - t^d` on points `(i, j^{1/d})`, represented by the integer
/// surrogate `xs + y - t` on `(i, j)`: the map `j -> j^{1/d}` is a bijection
/// between the two solution sets.
pub fn elekes_degree_d(lambda: u32, mu: u32, d: u32) -> ConstructionInstance {
    assert!(lambda >= 1 && mu >= 1 && d >= 1);
    let (x, y, s, t) = vars();
    let (l, m) = (lambda as i64, mu as i64);
    ConstructionInstance {
        name: format!("elekes-d:{lambda},{mu},{d}"),
        system: vec![&(&(&x * &s) + &y) - &t],
        original: Some(&(&(&x * &s) + &y.pow(d)) - &t.pow(d)),
        p: integer_grid("P", l, l * m),
        q: integer_grid("Q", m, l * m),
        predicted_count: elekes_count(lambda as u64, mu as u64),
        note: format!("surrogate coordinates (i, j) stand for (i, j^(1/{d}))"),
        witness: None,
    }
}

/// `F = (x - s)^2 + y - t` on `P = Q = [1, λ] x [1, 2λ^2]`.
pub fn valtr_grid(lambda: u32) -> ConstructionInstance {
    assert!(lambda >= 1);
    let (x, y, s, t) = vars();
    let l = lambda as i64;
    let height = 2 * l * l;
    // t = (x - s)^2 + y stays in range for exactly height - (x - s)^2 values of y.
    let mut predicted = 0u64;
    for a in 1..=l {
        for b in 1..=l {
            predicted += (height - (a - b) * (a - b)).max(0) as u64;
        }
    }
    ConstructionInstance {
        name: format!("valtr:{lambda}"),
        system: vec![&(&(&x - &s).pow(2) + &y) - &t],
        original: None,
        p: integer_grid("P", l, height),
        q: integer_grid("Q", l, height),
        predicted_count: predicted,
        note: "parabolas t = (x - s)^2 + y through a grid".into(),
        witness: None,
    }
}

/// Shape of a Cartesian instance `F = (y - γ(x)) H + (t - κ(s)) L`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SaturationSpec {
    /// `γ`, a polynomial in `x`.
    pub gamma: Polynomial,
    /// `κ`, a polynomial in `s`.
    pub kappa: Polynomial,
    /// Fixed cofactors; drawn at random when absent.
    pub h: Option<Polynomial>,
    pub l: Option<Polynomial>,
    /// Degree of random cofactors.
    pub cofactor_degree: u32,
}

impl SaturationSpec {
    pub fn new(gamma: Polynomial, kappa: Polynomial) -> SaturationSpec {
        assert!(gamma.uses_only(VarSet::of(&[Var::X])), "γ must be a polynomial in x");
        assert!(kappa.uses_only(VarSet::of(&[Var::S])), "κ must be a polynomial in s");
        SaturationSpec { gamma, kappa, h: None, l: None, cofactor_degree: 2 }
    }
}

/// A random polynomial in `x` (or `s`) of degree at most `max_degree`.
pub fn random_graph_curve<R: Rng + ?Sized>(rng: &mut R, var: Var, max_degree: u32) -> Polynomial {
    let spec = RandomPolySpec { coef_bound: 3, ..RandomPolySpec::new(VarSet::of(&[var]), max_degree, max_degree as usize + 1) };
    crate::algebra::random::random_polynomial(rng, &spec)
}

/// `n` points `(a, γ(a))` for `a = 1..=n`.
pub fn graph_points(label: &str, gamma: &Polynomial, var: Var, n: usize) -> PointSet {
    let pts = (1..=n as i64)
        .map(|a| {
            let a = GaussRational::from_integer(a);
            let v = gamma.substitute(&[(var, a.clone())]).constant_term();
            Point::new(a, v)
        })
        .collect();
    PointSet::new(label, pts).expect("distinct abscissae")
}

/// The witness `(G, K, H, L)` of a seeded saturation instance.
pub fn saturation_witness(spec: &SaturationSpec, seed: u64) -> CartesianWitness {
    let (_, y, _, t) = vars();
    let g = &y - &spec.gamma;
    let k = &t - &spec.kappa;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cof = RandomPolySpec::new(VarSet::ALL, spec.cofactor_degree, 4);
    loop {
        let h = spec.h.clone().unwrap_or_else(|| random_nonzero(&mut rng, &cof));
        let l = spec.l.clone().unwrap_or_else(|| random_nonzero(&mut rng, &cof));
        let w = CartesianWitness { g: g.clone(), k: k.clone(), h, l };
        if !w.assemble().is_zero() {
            return w;
        }
        assert!(spec.h.is_none() || spec.l.is_none(), "fixed cofactors give F = 0");
    }
}

/// `F = G H + K L` with `P ⊂ Z(G)`, `Q ⊂ Z(K)` of size `n`; every pair is incident.
pub fn cartesian_saturation(spec: &SaturationSpec, n: usize, seed: u64) -> ConstructionInstance {
    assert!(n >= 1);
    let witness = saturation_witness(spec, seed);
    ConstructionInstance {
        name: format!("saturation:{n},{seed}"),
        system: vec![witness.assemble()],
        original: None,
        p: graph_points("P", &spec.gamma, Var::X, n),
        q: graph_points("Q", &spec.kappa, Var::S, n),
        predicted_count: (n * n) as u64,
        note: format!("G = {}, K = {}", witness.g, witness.k),
        witness: Some(witness),
    }
}

/// `n` distinct random points `r` with `P = Q = {r}` and the system `x - s, y - t`.
pub fn generic_diagonal(n: usize, seed: u64) -> ConstructionInstance {
    assert!(n >= 1);
    let (x, y, s, t) = vars();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bound = 1_000_000i64.max(10 * n as i64);
    let mut seen = BTreeSet::new();
    let mut pts = Vec::with_capacity(n);
    while pts.len() < n {
        let a = rng.gen_range(-bound..=bound);
        let b = rng.gen_range(-bound..=bound);
        let den = rng.gen_range(1..=9);
        let p = Point::new(GaussRational::from_fraction(a, den), GaussRational::from_fraction(b, den));
        if seen.insert(p.clone()) {
            pts.push(p);
        }
    }
    ConstructionInstance {
        name: format!("diagonal:{n},{seed}"),
        system: vec![&x - &s, &y - &t],
        original: None,
        p: PointSet::new("P", pts.clone()).expect("distinct"),
        q: PointSet::new("Q", pts).expect("distinct"),
        predicted_count: n as u64,
        note: "X = Z(x - s, y - t); both projections of R are injective".into(),
        witness: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{count_intersections, CountOptions};

    fn check(inst: &ConstructionInstance) -> u64 {
        let r = count_intersections(&inst.system, &inst.p, &inst.q, &CountOptions::default()).unwrap();
        assert_eq!(r.count, inst.predicted_count, "{}", inst.name);
        r.count
    }

    #[test]
    fn elekes_counts() {
        assert_eq!(check(&elekes_grid(3, 3)), 45);
        assert_eq!(elekes_grid(3, 3).p.len(), 27);
        assert_eq!(check(&elekes_grid(1, 1)), 0);
        assert_eq!(check(&elekes_grid(4, 4)), 156);
        assert_eq!(check(&elekes_grid(2, 3)), 18);
    }

    #[test]
    fn degree_d_surrogate() {
        assert_eq!(check(&elekes_degree_d(3, 3, 2)), 45);
        assert_eq!(check(&elekes_degree_d(2, 1, 5)), 1);
        let one = elekes_degree_d(3, 2, 1);
        assert_eq!(one.predicted_count, elekes_grid(3, 2).predicted_count);
    }

    #[test]
    fn valtr_counts() {
        assert_eq!(check(&valtr_grid(1)), 2);
        assert_eq!(check(&valtr_grid(2)), 30);
        assert_eq!(valtr_grid(4).predicted_count, 472);
    }

    #[test]
    fn valtr_growth() {
        // Frozen oracle: over pairs (x, s), t = (x - s)^2 + y leaves 2λ² - (x - s)^2 choices of y.
        let mut last = f64::INFINITY;
        for l in 2..=6u64 {
            let inst = valtr_grid(l as u32);
            assert_eq!(check(&inst), (11 * l.pow(4) + l * l) / 6);
            let ratio = inst.predicted_count as f64 / l.pow(4) as f64;
            assert!((11.0 / 6.0..=2.0).contains(&ratio) && ratio < last, "λ={l}: {ratio}");
            last = ratio;
        }
    }

    #[test]
    fn saturation_axes() {
        let (x, y, s, t) = vars();
        let mut spec = SaturationSpec::new(Polynomial::zero(), Polynomial::zero());
        spec.h = Some(s.clone());
        spec.l = Some(y.clone());
        let inst = cartesian_saturation(&spec, 2, 0);
        assert_eq!(inst.system[0], &(&y * &s) + &(&t * &y));
        assert_eq!(check(&inst), 4);
        let spec = SaturationSpec::new(x.pow(2), Polynomial::zero());
        assert_eq!(check(&cartesian_saturation(&spec, 3, 7)), 9);
        assert_eq!(check(&cartesian_saturation(&spec, 1, 8)), 1);
    }

    #[test]
    fn diagonal_is_seeded() {
        assert_eq!(check(&generic_diagonal(5, 1)), 5);
        assert_eq!(check(&generic_diagonal(1, 1)), 1);
        let a = generic_diagonal(100, 1);
        let b = generic_diagonal(100, 2);
        assert_eq!(a, generic_diagonal(100, 1));
        assert_ne!(a.p, b.p);
        assert_eq!(check(&a), check(&b));
    }
}
