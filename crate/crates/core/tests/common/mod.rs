//! Random instances and brute-force oracles shared by the integration tests.
#![allow(dead_code)]

pub mod checks;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use toric_core::exactnum::{parse_rational, LogLinear, Prime, Rational};
use toric_core::geom::{LatticeVector, LiftedPoint};
use toric_core::roof::Roof;
use toric_core::toric::MonomialPair;

pub fn config(cases: u32) -> proptest::test_runner::Config {
    proptest::test_runner::Config { cases, failure_persistence: None, ..Default::default() }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn q(s: &str) -> Rational {
    parse_rational(s).unwrap()
}

pub fn qi(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

pub fn ll(s: &str) -> LogLinear {
    s.parse().unwrap()
}

pub fn lv(xs: &[i64]) -> LatticeVector {
    xs.iter().map(|&x| BigInt::from(x)).collect()
}

/// `+-2^a 3^b 5^c` with small exponents.
pub fn coeff(rng: &mut impl Rng) -> Rational {
    let mut x = qi(1);
    for p in [2, 3, 5] {
        let e: i32 = rng.gen_range(-2..=2);
        let base = qi(p);
        x *= if e >= 0 { num_traits::Pow::pow(&base, e as u32) } else { num_traits::Pow::pow(&base.recip(), (-e) as u32) };
    }
    if rng.gen_bool(0.2) {
        x = -x;
    }
    x
}

/// A log-linear number with small coefficients in `1, log 2, log 3`.
pub fn loglinear(rng: &mut impl Rng) -> LogLinear {
    let c = rng.gen_range(-4..=4);
    let a = rng.gen_range(-3..=3);
    let b = rng.gen_range(-3..=3);
    let den = rng.gen_range(1..=2);
    combo(Rational::new(c.into(), den.into()), Rational::new(a.into(), den.into()), qi(b))
}

pub fn nonneg_loglinear(rng: &mut impl Rng) -> LogLinear {
    let a = rng.gen_range(0..=3);
    let b = rng.gen_range(0..=3);
    let c = rng.gen_range(0..=2);
    combo(qi(c), qi(a), qi(b))
}

/// `c + a log 2 + b log 3`.
pub fn combo(c: Rational, a: Rational, b: Rational) -> LogLinear {
    LogLinear::from_parts(c, [(Prime::new(2).unwrap(), a), (Prime::new(3).unwrap(), b)])
}

/// A curve pair: exponents in `0..=4` on the line, at least two distinct.
pub fn curve_pair(rng: &mut impl Rng) -> MonomialPair {
    let len = rng.gen_range(2..=4);
    loop {
        let exps: Vec<LatticeVector> = (0..len).map(|_| lv(&[rng.gen_range(0..=4)])).collect();
        if exps.iter().any(|e| *e != exps[0]) {
            let c = (0..len).map(|_| coeff(rng)).collect();
            return MonomialPair::new(exps, c).unwrap();
        }
    }
}

/// A pair in `Z^2` whose exponents span the plane.
pub fn surface_pair(rng: &mut impl Rng) -> MonomialPair {
    let mut exps = vec![lv(&[0, 0]), lv(&[1, 0]), lv(&[0, 1])];
    for _ in 0..rng.gen_range(0..=2) {
        exps.push(lv(&[rng.gen_range(0..=2), rng.gen_range(0..=2)]));
    }
    exps.shuffle(rng);
    let c = exps.iter().map(|_| coeff(rng)).collect();
    MonomialPair::new(exps, c).unwrap()
}

/// Small pairs of dimension at most 2, any lattice.
pub fn small_pair(rng: &mut impl Rng) -> MonomialPair {
    match rng.gen_range(0..4) {
        0 => {
            let len = rng.gen_range(1..=3);
            let exps = vec![lv(&[rng.gen_range(0..=3)]); len];
            MonomialPair::new(exps, (0..len).map(|_| coeff(rng)).collect()).unwrap()
        }
        1 | 2 => curve_pair(rng),
        _ => surface_pair(rng),
    }
}

/// Full-lattice exponents in `Z^n` (`n` = 1 or 2) with `extra` more points.
pub fn full_exponents(rng: &mut impl Rng, n: usize, extra: usize) -> Vec<LatticeVector> {
    let mut exps = vec![vec![BigInt::from(0); n]];
    for i in 0..n {
        let mut e = vec![BigInt::from(0); n];
        e[i] = BigInt::from(1);
        exps.push(e);
    }
    for _ in 0..extra {
        exps.push((0..n).map(|_| BigInt::from(rng.gen_range(0..=3))).collect());
    }
    exps.shuffle(rng);
    exps
}

/// A 1-D roof on integer points of `[0, len]` including both ends.
pub fn roof_1d(rng: &mut impl Rng, nonneg: bool) -> Roof {
    let len = rng.gen_range(0..=3);
    let mut xs = vec![0, len];
    for _ in 0..rng.gen_range(0..=2) {
        xs.push(rng.gen_range(0..=len));
    }
    let mut gens: Vec<LiftedPoint> = xs
        .into_iter()
        .map(|x| LiftedPoint::new(vec![qi(x)], if nonneg { nonneg_loglinear(rng) } else { loglinear(rng) }))
        .collect();
    gens.shuffle(rng);
    Roof::new(gens).unwrap()
}

/// A 2-D roof over a small lattice polygon.
pub fn roof_2d(rng: &mut impl Rng, nonneg: bool) -> Roof {
    let mut gens = vec![LiftedPoint::new(vec![qi(0), qi(0)], loglinear(rng))];
    for _ in 0..rng.gen_range(2..=4) {
        gens.push(LiftedPoint::new(vec![qi(rng.gen_range(0..=2)), qi(rng.gen_range(0..=2))], loglinear(rng)));
    }
    if nonneg {
        for g in gens.iter_mut() {
            g.lift = nonneg_loglinear(rng);
        }
    }
    Roof::new(gens).unwrap()
}

// ---------------------------------------------------------------------------
// volume oracle

/// Integer hyperplanes `n . x <= c` supporting the integer points `pts` in
/// `R^d` (`d` = 2 or 3), found by trying every `d`-subset.
fn supporting_planes(pts: &[Vec<i64>]) -> Vec<(Vec<i128>, i128)> {
    let d = pts[0].len();
    let mut planes = Vec::new();
    let idx: Vec<usize> = (0..pts.len()).collect();
    let mut subsets: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..d {
        let mut next = Vec::new();
        for s in &subsets {
            let start = s.last().map_or(0, |&l| l + 1);
            for &i in &idx[start..] {
                let mut t = s.clone();
                t.push(i);
                next.push(t);
            }
        }
        subsets = next;
    }
    for s in subsets {
        let base: Vec<i128> = pts[s[0]].iter().map(|&x| x as i128).collect();
        let rows: Vec<Vec<i128>> =
            s[1..].iter().map(|&i| pts[i].iter().zip(&base).map(|(&x, &b)| x as i128 - b).collect()).collect();
        let normal: Vec<i128> = if d == 2 {
            vec![-rows[0][1], rows[0][0]]
        } else {
            let (u, v) = (&rows[0], &rows[1]);
            vec![u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]]
        };
        if normal.iter().all(|&x| x == 0) {
            continue;
        }
        let c: i128 = normal.iter().zip(&base).map(|(a, b)| a * b).sum();
        let vals: Vec<i128> = pts.iter().map(|p| normal.iter().zip(p).map(|(a, &b)| a * b as i128).sum()).collect();
        if vals.iter().all(|&v| v >= c) {
            planes.push((normal.iter().map(|x| -x).collect(), -c));
        }
        if vals.iter().all(|&v| v <= c) {
            planes.push((normal, c));
        }
    }
    planes
}

/// Bounds `[lower, upper]` on the volume of the hull of integer points,
/// counting grid cells of side `1/m` inside, resp. not provably outside.
pub fn grid_volume_bounds(pts: &[Vec<i64>], m: i64) -> (Rational, Rational) {
    let d = pts[0].len();
    let planes = supporting_planes(pts);
    let lo: Vec<i64> = (0..d).map(|k| pts.iter().map(|p| p[k]).min().unwrap()).collect();
    let hi: Vec<i64> = (0..d).map(|k| pts.iter().map(|p| p[k]).max().unwrap()).collect();
    let counts: Vec<i64> = (0..d).map(|k| (hi[k] - lo[k]) * m).collect();
    let corners: Vec<Vec<i64>> = (0..1usize << d).map(|b| (0..d).map(|k| ((b >> k) & 1) as i64).collect()).collect();
    let (mut inside, mut touching) = (0i64, 0i64);
    let total: i64 = counts.iter().product();
    for cell in 0..total.max(0) {
        let mut rest = cell;
        let mut origin = vec![0i64; d];
        for k in 0..d {
            origin[k] = lo[k] * m + rest % counts[k];
            rest /= counts[k];
        }
        let mut all_in = true;
        let mut excluded = false;
        for (n, c) in &planes {
            let vals: Vec<i128> = corners
                .iter()
                .map(|off| n.iter().zip(origin.iter().zip(off)).map(|(a, (o, f))| a * (o + f) as i128).sum())
                .collect();
            let bound = c * m as i128;
            if vals.iter().any(|&v| v > bound) {
                all_in = false;
            }
            if vals.iter().all(|&v| v > bound) {
                excluded = true;
            }
        }
        if planes.is_empty() {
            all_in = false;
        }
        if all_in {
            inside += 1;
        }
        if !excluded {
            touching += 1;
        }
    }
    let cell = Rational::new(BigInt::from(1), BigInt::from(m).pow(d as u32));
    (cell.clone() * qi(inside), cell * qi(touching))
}

// ---------------------------------------------------------------------------
// roof integral oracle

/// Upper envelope of generators over a rectangle `[0,a] x [0,b]` (or the
/// interval `[0,a]`), evaluated in floating point as the minimum over every
/// non-vertical plane through generators that has all generators beneath.
pub struct EnvelopeOracle {
    planes: Vec<(Vec<f64>, f64)>,
}

impl EnvelopeOracle {
    pub fn new(gens: &[(Vec<f64>, f64)]) -> Self {
        let d = gens[0].0.len();
        let mut planes = Vec::new();
        let n = gens.len();
        let mut try_plane = |grad: Vec<f64>, c: f64| {
            let ok = gens.iter().all(|(x, y)| *y <= c + grad.iter().zip(x).map(|(g, xi)| g * xi).sum::<f64>() + 1e-9);
            if ok {
                planes.push((grad, c));
            }
        };
        match d {
            1 => {
                for i in 0..n {
                    for j in 0..n {
                        let (xi, yi) = (gens[i].0[0], gens[i].1);
                        let (xj, yj) = (gens[j].0[0], gens[j].1);
                        if xi < xj {
                            let g = (yj - yi) / (xj - xi);
                            try_plane(vec![g], yi - g * xi);
                        }
                    }
                }
            }
            _ => {
                for i in 0..n {
                    for j in i + 1..n {
                        for k in j + 1..n {
                            let (p, qq, r) = (&gens[i], &gens[j], &gens[k]);
                            let (ux, uy, uz) = (qq.0[0] - p.0[0], qq.0[1] - p.0[1], qq.1 - p.1);
                            let (vx, vy, vz) = (r.0[0] - p.0[0], r.0[1] - p.0[1], r.1 - p.1);
                            let det = ux * vy - uy * vx;
                            if det.abs() < 1e-12 {
                                continue;
                            }
                            let gx = (uz * vy - vz * uy) / det;
                            let gy = (ux * vz - vx * uz) / det;
                            try_plane(vec![gx, gy], p.1 - gx * p.0[0] - gy * p.0[1]);
                        }
                    }
                }
            }
        }
        if planes.is_empty() {
            // all generators share one value at one point
            planes.push((vec![0.0; d], gens.iter().map(|g| g.1).fold(f64::NEG_INFINITY, f64::max)));
        }
        EnvelopeOracle { planes }
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        self.planes
            .iter()
            .map(|(g, c)| c + g.iter().zip(x).map(|(a, b)| a * b).sum::<f64>())
            .fold(f64::INFINITY, f64::min)
    }

    /// Rigorous bracket for a concave function on a box with step `1/m`:
    /// the corner average underestimates each cell, the centre value
    /// overestimates it.
    pub fn integral_bounds(&self, extent: &[i64], m: i64) -> (f64, f64) {
        let h = 1.0 / m as f64;
        match extent.len() {
            1 => {
                let cells = extent[0] * m;
                let (mut lo, mut hi) = (0.0, 0.0);
                for i in 0..cells {
                    let x0 = i as f64 * h;
                    lo += h * (self.eval(&[x0]) + self.eval(&[x0 + h])) / 2.0;
                    hi += h * self.eval(&[x0 + h / 2.0]);
                }
                (lo, hi)
            }
            _ => {
                let (cx, cy) = (extent[0] * m, extent[1] * m);
                let grid: Vec<Vec<f64>> = (0..=cx)
                    .map(|i| (0..=cy).map(|j| self.eval(&[i as f64 * h, j as f64 * h])).collect())
                    .collect();
                let (mut lo, mut hi) = (0.0, 0.0);
                for i in 0..cx as usize {
                    for j in 0..cy as usize {
                        let avg = (grid[i][j] + grid[i + 1][j] + grid[i][j + 1] + grid[i + 1][j + 1]) / 4.0;
                        lo += h * h * avg;
                        hi += h * h * self.eval(&[(i as f64 + 0.5) * h, (j as f64 + 0.5) * h]);
                    }
                }
                (lo, hi)
            }
        }
    }
}

/// Generators on the integer points of a box `[0,a]` or `[0,a] x [0,b]`,
/// including every corner, with random lifts.
pub fn box_generators(rng: &mut impl Rng, extent: &[i64]) -> Vec<LiftedPoint> {
    let mut pts: Vec<Vec<i64>> = Vec::new();
    match extent.len() {
        1 => {
            pts.push(vec![0]);
            pts.push(vec![extent[0]]);
            for _ in 0..rng.gen_range(0..=3) {
                pts.push(vec![rng.gen_range(0..=extent[0])]);
            }
        }
        _ => {
            for x in [0, extent[0]] {
                for y in [0, extent[1]] {
                    pts.push(vec![x, y]);
                }
            }
            for _ in 0..rng.gen_range(0..=3) {
                pts.push(vec![rng.gen_range(0..=extent[0]), rng.gen_range(0..=extent[1])]);
            }
        }
    }
    pts.into_iter()
        .map(|p| LiftedPoint::new(p.iter().map(|&x| qi(x)).collect(), loglinear(rng)))
        .collect()
}

pub fn to_f64_generators(gens: &[LiftedPoint]) -> Vec<(Vec<f64>, f64)> {
    gens.iter()
        .map(|g| {
            let base = g.base.iter().map(|x| x.numer().to_string().parse::<f64>().unwrap() / x.denom().to_string().parse::<f64>().unwrap()).collect();
            (base, g.lift.to_f64())
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Hilbert weight oracle

/// `s_tau(D)` by scanning all of `{0..D}^{N+1}` with an odometer, keeping
/// the tuples of total degree `D`, and grouping them in an ordered map.
pub fn hilbert_oracle(exps: &[LatticeVector], tau: &[LogLinear], d: u64) -> LogLinear {
    let m = exps.len();
    let mut digits = vec![0u64; m];
    let mut fibers: BTreeMap<LatticeVector, LogLinear> = BTreeMap::new();
    loop {
        if digits.iter().sum::<u64>() == d {
            let n = exps[0].len();
            let mut key = vec![BigInt::from(0); n];
            let mut w = LogLinear::zero();
            for i in 0..m {
                for k in 0..n {
                    key[k] += &exps[i][k] * BigInt::from(digits[i]);
                }
                w += tau[i].scale(&qi(digits[i] as i64));
            }
            let slot = fibers.entry(key).or_insert_with(|| w.clone());
            if w.cmp_value(slot) == std::cmp::Ordering::Greater {
                *slot = w;
            }
        }
        let mut pos = 0;
        loop {
            if pos == m {
                return fibers.values().sum();
            }
            digits[pos] += 1;
            if digits[pos] <= d {
                break;
            }
            digits[pos] = 0;
            pos += 1;
        }
    }
}
