//! Identities checked on one random instance each; shared by the property
//! tests and the acceptance run.

use num_bigint::BigInt;
use rand::Rng;

use toric_core::exactnum::{binomial, factorial, log_abs, relevant_places, LogLinear, Rational};
use toric_core::geom::{convex_hull, lattice_point};
use toric_core::mixed::{
    common_floor, mixed_integral, mixed_integral_via_mv, mixed_volume, multiheight, EmbeddingFamily,
};
use toric_core::roof::Roof;
use toric_core::toric::{
    arithmetic_hilbert_norm, degree, hilbert_weight, invert, join, normalized_height, orbit_decomposition, power,
    segre, symmetric_height_sum, translate, veronese, weight_vector, weil_height, MonomialPair,
};

use super::*;

pub type Check = std::result::Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn height(p: &MonomialPair) -> LogLinear {
    normalized_height(p).unwrap().value
}

pub fn height_is_nonnegative(rng: &mut impl Rng) -> Check {
    let p = small_pair(rng);
    let h = height(&p);
    ensure!(!h.is_negative(), "negative height {h} for {p:?}");
    Ok(())
}

pub fn power_scales_height(rng: &mut impl Rng) -> Check {
    let p = small_pair(rng);
    let k = rng.gen_range(1..=4);
    let lhs = height(&power(&p, k).unwrap());
    let rhs = height(&p).scale(&qi(k as i64));
    ensure!(lhs == rhs, "power {k}: {lhs} != {rhs}");
    Ok(())
}

pub fn translation_keeps_height(rng: &mut impl Rng) -> Check {
    let p = small_pair(rng);
    let c: Vec<BigInt> = (0..p.ambient_dim()).map(|_| BigInt::from(rng.gen_range(-3..=3))).collect();
    let gamma = coeff(rng);
    let t = translate(&p, &c, &gamma).unwrap();
    ensure!(height(&t) == height(&p), "translate changed the height of {p:?}");
    ensure!(degree(&t) == degree(&p), "translate changed the degree");
    Ok(())
}

pub fn inverse_completes_symmetric_sum(rng: &mut impl Rng) -> Check {
    let p = small_pair(rng);
    let lhs = height(&p) + height(&invert(&p));
    let rhs = symmetric_height_sum(&p).unwrap();
    ensure!(lhs == rhs, "{lhs} != {rhs}");
    Ok(())
}

pub fn join_is_bilinear(rng: &mut impl Rng) -> Check {
    let p = small_pair(rng);
    let q = curve_pair(rng);
    let j = join(&p, &q);
    let (dp, dq) = (Rational::from_integer(degree(&p)), Rational::from_integer(degree(&q)));
    let want = height(&p).scale(&dq) + height(&q).scale(&dp);
    let got = height(&j);
    ensure!(got == want, "join: {got} != {want}");
    ensure!(degree(&j) == degree(&p) * degree(&q), "join degree");
    Ok(())
}

pub fn segre_formula(rng: &mut impl Rng) -> Check {
    let p = if rng.gen_bool(0.5) { curve_pair(rng) } else { small_pair(rng) };
    let q = curve_pair(rng);
    let s = segre(&p, &q);
    let (n, m) = (p.dim(), q.dim());
    let (dp, dq) = (Rational::from_integer(degree(&p)), Rational::from_integer(degree(&q)));
    let want = height(&p).scale(&(binomial(n + m + 1, m) * &dq)) + height(&q).scale(&(binomial(n + m + 1, n) * &dp));
    let got = height(&s);
    ensure!(got == want, "segre: {got} != {want}");
    let deg = binomial(n + m, n) * dp * dq;
    ensure!(Rational::from_integer(degree(&s)) == deg, "segre degree");
    Ok(())
}

pub fn veronese_scales(rng: &mut impl Rng) -> Check {
    let p = curve_pair(rng);
    let d = rng.gen_range(1..=3u64);
    let v = veronese(&p, d, 1_000_000).unwrap();
    let r = p.dim() as u32;
    let got = height(&v);
    let want = height(&p).scale(&qi(d.pow(r + 1) as i64));
    ensure!(got == want, "veronese {d}: {got} != {want}");
    ensure!(degree(&v) == degree(&p) * BigInt::from(d.pow(r)), "veronese degree");
    Ok(())
}

/// `x_{n+1} = lambda x_n` inside `P^{n+1}`: height `h(1 : lambda)`.
pub fn binomial_hyperplane(rng: &mut impl Rng) -> Check {
    let n = rng.gen_range(1..=2);
    let mut exps = vec![lv(&vec![0; n])];
    for i in 0..n {
        let mut e = vec![0; n];
        e[i] = 1;
        exps.push(lv(&e));
    }
    exps.push(exps[n].clone());
    let lambda = coeff(rng);
    let mut c = vec![qi(1); n + 1];
    c.push(lambda.clone());
    let p = MonomialPair::new(exps, c).unwrap();
    let want: LogLinear = relevant_places([&lambda])
        .unwrap()
        .into_iter()
        .map(|v| LogLinear::max_value(&log_abs(&lambda, v).unwrap(), &LogLinear::zero()))
        .sum();
    let got = height(&p);
    ensure!(got == want, "hyperplane with lambda {lambda}: {got} != {want}");
    ensure!(degree(&p) == BigInt::from(1), "hyperplane degree");
    Ok(())
}

/// All exponents equal: the variety is the point `alpha`.
pub fn weil_degeneration(rng: &mut impl Rng) -> Check {
    let len = rng.gen_range(1..=4);
    let n = rng.gen_range(1..=2);
    let e: Vec<i64> = (0..n).map(|_| rng.gen_range(-2..=2)).collect();
    let c: Vec<Rational> = (0..len).map(|_| coeff(rng)).collect();
    let p = MonomialPair::new(vec![lv(&e); len], c.clone()).unwrap();
    let got = height(&p);
    let want = weil_height(&c).unwrap();
    ensure!(got == want, "{got} != weil height {want}");
    Ok(())
}

pub fn orbit_roofs_are_restrictions(rng: &mut impl Rng) -> Check {
    let p = if rng.gen_bool(0.5) { curve_pair(rng) } else { surface_pair(rng) };
    let places = p.places().unwrap();
    for orbit in orbit_decomposition(&p).unwrap() {
        for &v in &places {
            let parent = Roof::from_weight(p.exponents(), &weight_vector(&p, v).unwrap()).unwrap();
            let own = Roof::from_weight(orbit.pair.exponents(), &weight_vector(&orbit.pair, v).unwrap()).unwrap();
            let restricted = parent.restrict_to_face(&orbit.face).unwrap();
            ensure!(own.vertices() == restricted.vertices(), "orbit {:?} at {v}", orbit.vertices);
        }
    }
    Ok(())
}

pub fn hilbert_norm_splits_by_place(rng: &mut impl Rng) -> Check {
    let p = if rng.gen_bool(0.5) { curve_pair(rng) } else { surface_pair(rng) };
    let d = rng.gen_range(1..=4);
    let b = p.normalized_exponents();
    let mut want = LogLinear::zero();
    for v in p.places().unwrap() {
        want += hilbert_weight(&b, &weight_vector(&p, v).unwrap(), d, 1_000_000).unwrap();
    }
    let got = arithmetic_hilbert_norm(&p, d, 1_000_000).unwrap();
    ensure!(got == want, "{got} != {want}");
    Ok(())
}

pub fn chow_weight_shift(rng: &mut impl Rng) -> Check {
    let n = rng.gen_range(1..=2);
    let extra = rng.gen_range(0..=2);
    let exps = full_exponents(rng, n, extra);
    let tau: Vec<LogLinear> = exps.iter().map(|_| loglinear(rng)).collect();
    let c = loglinear(rng);
    let shifted: Vec<LogLinear> = tau.iter().map(|t| t + &c).collect();
    let deg = {
        let poly = convex_hull(&exps.iter().map(|e| lattice_point(e)).collect::<Vec<_>>()).unwrap();
        poly.volume().scale(&factorial(n))
    };
    let got = toric_core::toric::chow_weight(&exps, &shifted).unwrap();
    let want = toric_core::toric::chow_weight(&exps, &tau).unwrap() + c.try_mul(&deg.scale(&qi(n as i64 + 1))).unwrap();
    ensure!(got == want, "{got} != {want}");
    Ok(())
}

// ---------------------------------------------------------------------------
// mixed integrals

fn roof_family(rng: &mut impl Rng, n: usize, nonneg: bool) -> Vec<Roof> {
    (0..=n).map(|_| if n == 1 { roof_1d(rng, nonneg) } else { roof_2d(rng, nonneg) }).collect()
}

fn family_dim(rng: &mut impl Rng) -> usize {
    if rng.gen_bool(0.85) {
        1
    } else {
        2
    }
}

pub fn mixed_integral_diagonal(rng: &mut impl Rng) -> Check {
    let n = family_dim(rng);
    let f = roof_family(rng, n, false).remove(0);
    let got = mixed_integral(&vec![f.clone(); n + 1]).unwrap();
    let want = f.integral().scale(&factorial(n + 1));
    ensure!(got == want, "MI(f,..,f) = {got}, (n+1)! int f = {want}");
    Ok(())
}

pub fn mixed_integral_symmetric(rng: &mut impl Rng) -> Check {
    let n = family_dim(rng);
    let fs = roof_family(rng, n, false);
    let base = mixed_integral(&fs).unwrap();
    let mut rev = fs.clone();
    rev.reverse();
    ensure!(mixed_integral(&rev).unwrap() == base, "reversal");
    let mut rot = fs.clone();
    rot.rotate_left(1);
    ensure!(mixed_integral(&rot).unwrap() == base, "rotation");
    Ok(())
}

pub fn mixed_integral_multilinear(rng: &mut impl Rng) -> Check {
    let mut fs = roof_family(rng, 1, false);
    let g = roof_1d(rng, false);
    let sum = fs[0].sup_convolution(&g).unwrap();
    let lhs = {
        let mut a = fs.clone();
        a[0] = sum;
        mixed_integral(&a).unwrap()
    };
    let first = mixed_integral(&fs).unwrap();
    fs[0] = g;
    let second = mixed_integral(&fs).unwrap();
    ensure!(lhs == &first + &second, "{lhs} != {first} + {second}");
    Ok(())
}

pub fn mixed_integral_nonnegative(rng: &mut impl Rng) -> Check {
    let n = family_dim(rng);
    let fs = roof_family(rng, n, true);
    let mi = mixed_integral(&fs).unwrap();
    ensure!(!mi.is_negative(), "negative MI {mi}");
    Ok(())
}

pub fn mixed_integral_routes_agree(rng: &mut impl Rng) -> Check {
    let n = family_dim(rng);
    let fs = roof_family(rng, n, false);
    let floor = common_floor(&fs) - LogLinear::from_integer(rng.gen_range(0..=2));
    let direct = mixed_integral(&fs).unwrap();
    let via = mixed_integral_via_mv(&fs, &vec![floor; n + 1]).unwrap();
    ensure!(direct == via, "{direct} != {via}");
    Ok(())
}

pub fn diagonal_multiheight(rng: &mut impl Rng) -> Check {
    let p = if rng.gen_bool(0.8) { curve_pair(rng) } else { surface_pair(rng) };
    let members = vec![p.clone(); p.dim() + 1];
    let family = match EmbeddingFamily::new(members) {
        Ok(f) => f,
        Err(e) => return Err(format!("{e}")),
    };
    let got = multiheight(&family).unwrap().value;
    let want = height(&p);
    ensure!(got == want, "{got} != {want}");
    Ok(())
}

pub fn mixed_volume_properties(rng: &mut impl Rng) -> Check {
    let polygon = |rng: &mut dyn rand::RngCore| {
        let k = rng.gen_range(1..=4);
        let pts: Vec<Vec<LogLinear>> = (0..k)
            .map(|_| vec![LogLinear::from_integer(rng.gen_range(0..=3)), LogLinear::from_integer(rng.gen_range(0..=3))])
            .collect();
        convex_hull(&pts).unwrap()
    };
    let (p, p2, q) = (polygon(rng), polygon(rng), polygon(rng));
    let mv = mixed_volume(&[p.clone(), q.clone()]).unwrap();
    ensure!(mv == mixed_volume(&[q.clone(), p.clone()]).unwrap(), "symmetry");
    ensure!(!mv.is_negative(), "negative mixed volume");
    let sum = p.minkowski_sum(&p2).unwrap();
    let lhs = mixed_volume(&[sum, q.clone()]).unwrap();
    let rhs = mv.clone() + mixed_volume(&[p2, q.clone()]).unwrap();
    ensure!(lhs == rhs, "Minkowski additivity {lhs} != {rhs}");
    let diag = mixed_volume(&[q.clone(), q.clone()]).unwrap();
    ensure!(diag == q.volume().scale(&qi(2)), "MV(Q,Q) = 2 Vol(Q)");
    Ok(())
}

/// Mixed volume of segments is `|det|`.
pub fn mixed_volume_of_segments(rng: &mut impl Rng) -> Check {
    let n = rng.gen_range(1..=3);
    let mut rows: Vec<Vec<i64>> = Vec::new();
    let mut polys = Vec::new();
    for _ in 0..n {
        let v: Vec<i64> = (0..n).map(|_| rng.gen_range(-2..=2)).collect();
        polys.push(convex_hull(&[vec![LogLinear::zero(); n], v.iter().map(|&x| LogLinear::from_integer(x)).collect()]).unwrap());
        rows.push(v);
    }
    let det = det_i64(&rows).abs();
    let mv = mixed_volume(&polys).unwrap();
    ensure!(mv == LogLinear::from_integer(det), "{mv} != |det| = {det}");
    Ok(())
}

fn det_i64(m: &[Vec<i64>]) -> i64 {
    match m.len() {
        1 => m[0][0],
        2 => m[0][0] * m[1][1] - m[0][1] * m[1][0],
        _ => (0..m.len())
            .map(|j| {
                let minor: Vec<Vec<i64>> = m[1..].iter().map(|r| r.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, &x)| x).collect()).collect();
                let s = if j % 2 == 0 { 1 } else { -1 };
                s * m[0][j] * det_i64(&minor)
            })
            .sum(),
    }
}

/// Sum over places of `log|x|_v` is zero.
pub fn product_formula(rng: &mut impl Rng) -> Check {
    let x = coeff(rng) * qi(rng.gen_range(1..=1000)) / qi(rng.gen_range(1..=1000));
    let total: LogLinear = relevant_places([&x]).unwrap().into_iter().map(|v| log_abs(&x, v).unwrap()).sum();
    ensure!(total.is_zero(), "product formula fails for {x}: {total}");
    Ok(())
}
