//! Functions differentiable for one scheme and not for another of the same
//! order.
//!
//! Pick a parity `c` where the consequent's component `Q` is outside the
//! principal ideal of the antecedent's component `P`. Write `u` for a
//! function on the exponent lattice `Z^k` of the node primes, and set
//!
//! ```text
//! f(sigma * y * p^-m) = sigma^[c odd] * u(vec y)     for 1 <= m <= M
//! ```
//!
//! with `f = 0` everywhere else, where `p` is a prime dividing no node.
//! For `h = sigma * y * p^-m` the antecedent difference is
//! `sigma^[c odd] * sum_a P_a u(vec y + a)`, and for every other `h` all
//! of its sample points miss the support of `f`. So `Delta_S f(0, h) = 0`
//! for all `h` as soon as `u` solves the lattice recurrence
//! `sum_a P_a u(g + a) = 0` everywhere. Such solutions are the functionals
//! vanishing on the ideal `(P)`, and `<Q, u> = 1` is reachable because
//! `Q` is not in it; the consequent quotient at `h = p^-m` is then `p^(mn)`.
//!
//! A weight `w` with a unique maximum and minimum on `supp P` orders the
//! lattice into levels. Values on the band `0 <= w.g < D` (`D` the spread
//! of `w` on `supp P`) are free; above the band the recurrence solves for
//! the top term, below it for the bottom term.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::algebra::{exact_divide, laurent_embed, parity_project, to_algebra, LaurentPoly};
use crate::classify::{implies, Reason};
use crate::error::{Error, Result};
use crate::exact::{
    factor_over, factor_positive, lattice_box, next_prime_not_in, pow, ExponentVector, QuadExt, Rational,
};
use crate::report::ser_display;
use crate::schemes::{require_grd, DiffScheme, Parity};

use super::function::{difference_at_zero, FunctionSpec};

pub const DEFAULT_SCALE_COUNT: u32 = 8;

/// Largest weight entry tried before falling back to an injective weight.
const WEIGHT_SEARCH: i64 = 3;

/// Lattice points allowed in the tabulated window.
const MAX_WINDOW_POINTS: usize = 1 << 20;

/// Difference evaluations allowed in the exhaustive verification.
const MAX_GRID_CHECKS: usize = 1 << 24;

/// Number of points of the cube `[-radius, radius]^k`, if it fits.
fn cube_points(radius: u32, k: usize) -> Option<usize> {
    let side = 2 * radius as usize + 1;
    (0..k).try_fold(1usize, |acc, _| acc.checked_mul(side))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessParams {
    /// Number of scales `M`.
    pub scale_count: u32,
    /// Window radius `L`; defaults to `2l + 1` for node radius `l`.
    pub window_radius: Option<u32>,
}

impl Default for WitnessParams {
    fn default() -> Self {
        WitnessParams {
            scale_count: DEFAULT_SCALE_COUNT,
            window_radius: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GeneratorKind {
    /// The antecedent's component vanishes; `u` is a single point mass.
    Finite,
    /// `u` solves the antecedent's lattice recurrence from one band seed.
    Recurrence,
}

/// Rule producing `u` everywhere on the lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub kind: GeneratorKind,
    /// Empty for the finite kind.
    pub weight: Vec<i64>,
    /// Antecedent component over the basis (empty for the finite kind).
    pub relation: Vec<(Vec<i64>, Rational)>,
    pub seed_point: Vec<i64>,
    pub seed_value: Rational,
}

/// Values accumulated by the recurrence: numbers, or linear forms in the
/// band values.
trait Accumulate: Clone {
    fn empty() -> Self;
    fn add_scaled(&mut self, other: &Self, c: &Rational);
}

impl Accumulate for Rational {
    fn empty() -> Self {
        Zero::zero()
    }
    fn add_scaled(&mut self, other: &Self, c: &Rational) {
        *self += other * c;
    }
}

type LinearForm = BTreeMap<Vec<i64>, Rational>;

impl Accumulate for LinearForm {
    fn empty() -> Self {
        BTreeMap::new()
    }
    fn add_scaled(&mut self, other: &Self, c: &Rational) {
        for (k, v) in other {
            let e = self.entry(k.clone()).or_insert_with(Rational::zero);
            *e += v * c;
            if e.is_zero() {
                self.remove(k);
            }
        }
    }
}

/// The recurrence with its pivots precomputed.
struct Recurrence<'a> {
    weight: &'a [i64],
    relation: &'a [(Vec<i64>, Rational)],
    top: usize,
    bottom: usize,
    spread: i64,
}

impl<'a> Recurrence<'a> {
    fn new(weight: &'a [i64], relation: &'a [(Vec<i64>, Rational)]) -> Recurrence<'a> {
        let levels: Vec<i64> = relation.iter().map(|(a, _)| dot(weight, a)).collect();
        let top = (0..levels.len()).max_by_key(|&i| levels[i]).expect("nonempty");
        let bottom = (0..levels.len()).min_by_key(|&i| levels[i]).expect("nonempty");
        Recurrence {
            weight,
            relation,
            top,
            bottom,
            spread: levels[top] - levels[bottom],
        }
    }

    fn in_band(&self, g: &[i64]) -> bool {
        let lvl = dot(self.weight, g);
        0 <= lvl && lvl < self.spread
    }

    /// Pivot index and the points `g - a_pivot + a` for the other terms.
    fn dependencies(&self, g: &[i64]) -> (usize, Vec<(Vec<i64>, usize)>) {
        let pivot = if dot(self.weight, g) >= self.spread {
            self.top
        } else {
            self.bottom
        };
        let anchor = &self.relation[pivot].0;
        let deps = self
            .relation
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != pivot)
            .map(|(i, (a, _))| {
                let point = g.iter().zip(anchor).zip(a).map(|((x, y), z)| x - y + z).collect();
                (point, i)
            })
            .collect();
        (pivot, deps)
    }

    /// Value at `g`, sharing `memo` across calls.
    fn solve<V: Accumulate>(
        &self,
        target: &[i64],
        band: &dyn Fn(&[i64]) -> V,
        memo: &mut HashMap<Vec<i64>, V>,
    ) -> V {
        let mut stack = vec![target.to_vec()];
        while let Some(g) = stack.last().cloned() {
            if memo.contains_key(&g) {
                stack.pop();
                continue;
            }
            if self.in_band(&g) {
                let value = band(&g);
                memo.insert(g, value);
                stack.pop();
                continue;
            }
            let (pivot, deps) = self.dependencies(&g);
            let missing: Vec<Vec<i64>> = deps
                .iter()
                .filter(|(d, _)| !memo.contains_key(d))
                .map(|(d, _)| d.clone())
                .collect();
            if !missing.is_empty() {
                stack.extend(missing);
                continue;
            }
            let scale = -self.relation[pivot].1.recip();
            let mut value = V::empty();
            for (d, i) in &deps {
                value.add_scaled(&memo[d], &(&self.relation[*i].1 * &scale));
            }
            memo.insert(g, value);
            stack.pop();
        }
        memo[target].clone()
    }
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(g: &[i64]) -> u64 {
    g.iter().map(|e| e.unsigned_abs()).max().unwrap_or(0)
}

/// A weight with a unique maximum and a unique minimum on `points`.
fn separating_weight(points: &[Vec<i64>]) -> Vec<i64> {
    let k = points.first().map_or(0, Vec::len);
    let unique_extremes = |w: &[i64]| {
        let levels: Vec<i64> = points.iter().map(|a| dot(w, a)).collect();
        let max = *levels.iter().max().expect("nonempty");
        let min = *levels.iter().min().expect("nonempty");
        levels.iter().filter(|&&l| l == max).count() == 1
            && levels.iter().filter(|&&l| l == min).count() == 1
    };
    let lo = vec![-WEIGHT_SEARCH; k];
    let hi = vec![WEIGHT_SEARCH; k];
    let mut candidates: Vec<Vec<i64>> = lattice_box(&lo, &hi)
        .into_iter()
        .filter(|w| w.iter().any(|&x| x != 0))
        .collect();
    // Prefer small weights so that bands stay thin.
    candidates.sort_by_key(|w| (w.iter().map(|x| x.abs()).sum::<i64>(), std::cmp::Reverse(w.clone())));
    if let Some(w) = candidates.into_iter().find(|w| unique_extremes(w)) {
        return w;
    }
    // Base larger than any coordinate spread: injective on the points.
    let base = 2 * points.iter().map(|a| norm(a) as i64).max().unwrap_or(0) + 1;
    (0..k).map(|i| base.pow(i as u32)).collect()
}

/// A function with `Delta_S f(0, h) = 0` for every `h` while
/// `Delta_T f(0, p^-m) = 1` for `m = 1..=M`.
#[derive(Clone, Debug, PartialEq)]
pub struct WitnessFunction {
    pub scale_prime: u64,
    pub scale_count: u32,
    pub window_radius: u32,
    /// Largest exponent-vector norm of a node of either scheme.
    pub node_radius: u32,
    pub order: u32,
    pub parity: Parity,
    /// Primes of the node lattice, sorted.
    pub basis: Vec<u64>,
    pub generator: Generator,
    /// Nonzero values on the window `norm(g) <= L`, keyed by sign and point.
    table: BTreeMap<(i8, Vec<i64>), Rational>,
}

impl WitnessFunction {
    /// Nonzero window values; every other window entry is zero.
    pub fn table(&self) -> impl Iterator<Item = (i8, &Vec<i64>, &Rational)> + '_ {
        self.table.iter().map(|((s, g), v)| (*s, g, v))
    }

    /// The value of `f` at `sign * y * p^-1`, where `y` has exponents `g`.
    pub fn inner_value(&self, sign: i8, g: &[i64]) -> Rational {
        let mut memo = HashMap::new();
        self.inner_value_with(sign, g, &mut memo)
    }

    /// Copy with one window value replaced (for fault injection).
    pub fn with_value(&self, sign: i8, g: Vec<i64>, value: Rational) -> WitnessFunction {
        let mut out = self.clone();
        if value.is_zero() {
            out.table.remove(&(sign, g));
        } else {
            out.table.insert((sign, g), value);
        }
        out
    }

    fn sign_factor(&self, sign: i8) -> Rational {
        if sign < 0 && self.parity == Parity::Odd {
            -Rational::one()
        } else {
            Rational::one()
        }
    }

    fn lattice_value(&self, g: &[i64], memo: &mut HashMap<Vec<i64>, Rational>) -> Rational {
        let gen = &self.generator;
        let point_mass = |x: &[i64]| {
            if x == gen.seed_point.as_slice() {
                gen.seed_value.clone()
            } else {
                Rational::zero()
            }
        };
        match gen.kind {
            GeneratorKind::Finite => point_mass(g),
            GeneratorKind::Recurrence => {
                Recurrence::new(&gen.weight, &gen.relation).solve(g, &point_mass, memo)
            }
        }
    }

    fn inner_value_with(
        &self,
        sign: i8,
        g: &[i64],
        memo: &mut HashMap<Vec<i64>, Rational>,
    ) -> Rational {
        if norm(g) <= self.window_radius as u64 {
            return self
                .table
                .get(&(sign, g.to_vec()))
                .cloned()
                .unwrap_or_else(Rational::zero);
        }
        self.sign_factor(sign) * self.lattice_value(g, memo)
    }

    /// Decomposes `t = sign * y * p^-m` with `y` in the node lattice.
    fn locate(&self, t: &Rational) -> Option<(i8, Vec<i64>)> {
        if t.is_zero() {
            return None;
        }
        let mut primes = self.basis.clone();
        primes.push(self.scale_prime);
        let v = factor_over(&t.abs(), &primes)?;
        let m = -v.get(self.scale_prime);
        if m < 1 || m > self.scale_count as i64 {
            return None;
        }
        let sign = if t.is_negative() { -1 } else { 1 };
        Some((sign, v.dense(&self.basis)))
    }

    pub fn eval_rational(&self, t: &Rational) -> Rational {
        let mut memo = HashMap::new();
        self.eval_with(t, &mut memo)
    }

    fn eval_with(&self, t: &Rational, memo: &mut HashMap<Vec<i64>, Rational>) -> Rational {
        match self.locate(t) {
            Some((sign, g)) => self.inner_value_with(sign, &g, memo),
            None => Rational::zero(),
        }
    }

    /// Whether `t` lies in the support carrier `+-G * p^-m`, `1 <= m <= M`.
    pub fn in_carrier(&self, t: &Rational) -> bool {
        self.locate(t).is_some()
    }

    pub fn record(&self) -> WitnessRecord {
        let vector = |g: &[i64]| ExponentVector::from_dense(&self.basis, g).to_string();
        WitnessRecord {
            p: self.scale_prime,
            m: self.scale_count,
            l: self.window_radius,
            n: self.order,
            parity: self.parity,
            basis: self.basis.clone(),
            node_radius: self.node_radius,
            generator: GeneratorRecord {
                kind: self.generator.kind,
                weight: self.generator.weight.clone(),
                relation: self
                    .generator
                    .relation
                    .iter()
                    .map(|(a, c)| (vector(a), c.to_string()))
                    .collect(),
                seed_point: vector(&self.generator.seed_point),
                seed_value: self.generator.seed_value.to_string(),
            },
            table: self
                .table
                .iter()
                .map(|((s, g), v)| (*s, vector(g), v.to_string()))
                .collect(),
        }
    }
}

/// Serialized form of a witness.
#[derive(Clone, Debug, Serialize)]
pub struct WitnessRecord {
    pub p: u64,
    #[serde(rename = "M")]
    pub m: u32,
    #[serde(rename = "L")]
    pub l: u32,
    pub n: u32,
    pub parity: Parity,
    pub basis: Vec<u64>,
    pub node_radius: u32,
    pub generator: GeneratorRecord,
    /// `(sign, exponent vector, value)` for the nonzero window values.
    pub table: Vec<(i8, String, String)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct GeneratorRecord {
    pub kind: GeneratorKind,
    pub weight: Vec<i64>,
    pub relation: Vec<(String, String)>,
    pub seed_point: String,
    pub seed_value: String,
}

fn node_vectors(s: &DiffScheme) -> Result<Vec<ExponentVector>> {
    s.nodes()
        .filter(|a| !a.is_zero())
        .map(|a| factor_positive(&a.abs()))
        .collect()
}

fn component(s: &DiffScheme, parity: Parity) -> Result<LaurentPoly> {
    Ok(laurent_embed(&parity_project(&to_algebra(s)?, parity))?.0)
}

/// Builds a witness that `antecedent`-differentiability does not imply
/// `consequent`-differentiability.
pub fn witness_same_order(
    antecedent: &DiffScheme,
    consequent: &DiffScheme,
    params: &WitnessParams,
) -> Result<WitnessFunction> {
    let verdict = implies(antecedent, consequent)?;
    if verdict.reason == Reason::OrderGap {
        return Err(Error::domain(
            "schemes have different orders; use the order-gap witness",
        ));
    }
    if verdict.holds {
        return Err(Error::domain(
            "the implication holds, so no witness function exists",
        ));
    }
    if params.scale_count == 0 {
        return Err(Error::domain("scale count M must be at least 1"));
    }
    let n = require_grd(antecedent)?;

    let mut vectors = node_vectors(antecedent)?;
    vectors.extend(node_vectors(consequent)?);
    let basis: Vec<u64> = vectors
        .iter()
        .flat_map(|v| v.primes().collect::<Vec<_>>())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let node_radius = vectors.iter().map(|v| v.max_norm()).max().unwrap_or(0) as u32;
    let window_radius = params.window_radius.unwrap_or(2 * node_radius + 1);
    match cube_points(window_radius, basis.len()) {
        Some(points) if points <= MAX_WINDOW_POINTS => {}
        _ => {
            return Err(Error::domain(format!(
                "window-cap-exceeded: radius {window_radius} over {} primes exceeds {MAX_WINDOW_POINTS} points",
                basis.len()
            )))
        }
    }
    let scale_prime = next_prime_not_in(&basis);

    let epsilon = Parity::of_order(n);
    let mut chosen = None;
    for parity in [epsilon, epsilon.opposite()] {
        let p = component(antecedent, parity)?;
        let q = component(consequent, parity)?;
        if q.is_zero() {
            continue;
        }
        if p.is_zero() || exact_divide(&q, &p)?.is_none() {
            chosen = Some((parity, p, q));
            break;
        }
    }
    let Some((parity, p, q)) = chosen else {
        return Err(Error::Inconsistent(
            "refuted implication without a separating component".into(),
        ));
    };

    let dense = |poly: &LaurentPoly| -> Vec<(Vec<i64>, Rational)> {
        poly.terms().map(|(v, c)| (v.dense(&basis), c.clone())).collect()
    };
    let q_terms = dense(&q);
    let generator = if p.is_zero() {
        let (a0, c0) = q_terms.iter().min_by(|x, y| x.0.cmp(&y.0)).expect("nonzero");
        Generator {
            kind: GeneratorKind::Finite,
            weight: Vec::new(),
            relation: Vec::new(),
            seed_point: a0.clone(),
            seed_value: c0.recip(),
        }
    } else {
        recurrence_generator(dense(&p), &q_terms)?
    };

    let mut w = WitnessFunction {
        scale_prime,
        scale_count: params.scale_count,
        window_radius,
        node_radius,
        order: n,
        parity,
        basis,
        generator,
        table: BTreeMap::new(),
    };
    let k = w.basis.len();
    let r = window_radius as i64;
    let mut memo = HashMap::new();
    let mut table = BTreeMap::new();
    for g in lattice_box(&vec![-r; k], &vec![r; k]) {
        let v = w.lattice_value(&g, &mut memo);
        if !v.is_zero() {
            table.insert((-1, g.clone()), w.sign_factor(-1) * &v);
            table.insert((1, g), v);
        }
    }
    w.table = table;

    let pairing = q_terms
        .iter()
        .fold(Rational::zero(), |acc, (a, c)| acc + c * w.lattice_value(a, &mut memo));
    if !pairing.is_one() {
        return Err(Error::Inconsistent(format!(
            "witness normalization gave <Q, u> = {pairing}"
        )));
    }
    Ok(w)
}

fn recurrence_generator(
    relation: Vec<(Vec<i64>, Rational)>,
    q_terms: &[(Vec<i64>, Rational)],
) -> Result<Generator> {
    let points: Vec<Vec<i64>> = relation.iter().map(|(a, _)| a.clone()).collect();
    let weight = separating_weight(&points);
    let rec = Recurrence::new(&weight, &relation);

    // <Q, u> as a linear form in the band values.
    let unit_form = |g: &[i64]| -> LinearForm { BTreeMap::from([(g.to_vec(), Rational::one())]) };
    let mut memo: HashMap<Vec<i64>, LinearForm> = HashMap::new();
    let mut pairing = LinearForm::new();
    for (a, c) in q_terms {
        let form = rec.solve(a, &unit_form, &mut memo);
        pairing.add_scaled(&form, c);
    }
    let Some((seed_point, coeff)) = pairing.into_iter().next() else {
        return Err(Error::Inconsistent(
            "consequent pairs to zero with every recurrence solution".into(),
        ));
    };
    Ok(Generator {
        kind: GeneratorKind::Recurrence,
        weight,
        relation,
        seed_point,
        seed_value: coeff.recip(),
    })
}

/// One failed check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckFailure {
    /// `antecedent` (expected 0) or `consequent` (expected 1).
    pub check: &'static str,
    #[serde(serialize_with = "ser_display")]
    pub h: Rational,
    #[serde(serialize_with = "ser_display")]
    pub value: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub passed: bool,
    pub antecedent_checks: usize,
    pub consequent_checks: usize,
    pub failure_count: usize,
    /// The first failures, in grid order.
    pub failures: Vec<CheckFailure>,
    /// `Delta_T f(0, s_m) / s_m^n` for `m = 1..=M`.
    #[serde(serialize_with = "crate::report::ser_rationals")]
    pub consequent_quotients: Vec<Rational>,
    pub scales_disjoint: bool,
    pub structural_note: String,
}

const LISTED_FAILURES: usize = 20;

/// Checks the witness contract on the exhaustive grid
/// `h = +-g * p^-m`, `norm(g) <= L + l`, `1 <= m <= M`.
pub fn verify_witness(
    w: &WitnessFunction,
    antecedent: &DiffScheme,
    consequent: &DiffScheme,
) -> Result<VerificationReport> {
    require_grd(antecedent)?;
    let n = require_grd(consequent)?;
    let spec = FunctionSpec::WitnessTable(std::sync::Arc::new(w.clone()));
    let k = w.basis.len();
    let checks = cube_points(w.window_radius + w.node_radius, k)
        .and_then(|points| points.checked_mul(2 * w.scale_count as usize));
    if !checks.is_some_and(|c| c <= MAX_GRID_CHECKS) {
        return Err(Error::domain(format!(
            "window-cap-exceeded: verification grid exceeds {MAX_GRID_CHECKS} checks"
        )));
    }
    let radius = (w.window_radius + w.node_radius) as i64;
    let grid = lattice_box(&vec![-radius; k], &vec![radius; k]);
    let p = Rational::from_integer(w.scale_prime.into());

    let mut failures = Vec::new();
    let mut failure_count = 0;
    let mut fail = |check, h: Rational, value: Rational| {
        failure_count += 1;
        if failures.len() < LISTED_FAILURES {
            failures.push(CheckFailure { check, h, value });
        }
    };

    let mut antecedent_checks = 0;
    let mut memo = HashMap::new();
    for m in 1..=w.scale_count {
        let scale = pow(&p, -(m as i64));
        for g in &grid {
            let y = ExponentVector::from_dense(&w.basis, g).reconstruct();
            for sign in [1, -1] {
                let h = Rational::from_integer(sign.into()) * &y * &scale;
                let value = antecedent.terms().fold(Rational::zero(), |acc, (c, a)| {
                    acc + c * w.eval_with(&(a * &h), &mut memo)
                });
                antecedent_checks += 1;
                if !value.is_zero() {
                    fail("antecedent", h, value);
                }
            }
        }
    }

    let mut consequent_quotients = Vec::new();
    for m in 1..=w.scale_count {
        let h = pow(&p, -(m as i64));
        let value = difference_at_zero(consequent, &spec, &QuadExt::rational(h.clone())).rat;
        consequent_quotients.push(&value / pow(&h, n as i64));
        if !value.is_one() {
            fail("consequent", h, value);
        }
    }

    let mut carrier = BTreeSet::new();
    let mut scales_disjoint = true;
    for m in 1..=w.scale_count {
        let scale = pow(&p, -(m as i64));
        for (sign, g, _) in w.table() {
            let point = Rational::from_integer(sign.into())
                * ExponentVector::from_dense(&w.basis, g).reconstruct()
                * &scale;
            scales_disjoint &= carrier.insert(point);
        }
    }

    Ok(VerificationReport {
        passed: failure_count == 0 && scales_disjoint,
        antecedent_checks,
        consequent_checks: w.scale_count as usize,
        failure_count,
        failures,
        consequent_quotients,
        scales_disjoint,
        structural_note: format!(
            "h outside the grid: if h is not +-y*{p}^-m with y in the lattice of primes {:?} \
             and 1 <= m <= {}, no sample point a_i*h lies in the carrier of f, so the \
             difference is 0; otherwise the difference is the recurrence relation at vec(y), \
             which the generator satisfies identically",
            w.basis, w.scale_count
        ),
    })
}
