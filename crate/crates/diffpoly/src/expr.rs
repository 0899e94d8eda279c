//! Core expression types: monomials, average/primitive factors, polynomials.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::param::Param;
use crate::rational::Rat;

/// Errors produced by the algebra.
#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// The input text is not a well-formed expression.
    #[error("parse error: {0}")]
    Parse(String),
    /// An operation required a zero-average operand but the canonical
    /// average of the operand is nonzero.
    #[error("operand has nonzero average: {0}")]
    NonzeroAverage(String),
    /// Completing the operation would require nesting primitives (a
    /// primitive whose integrand itself contains a primitive factor that
    /// cannot be eliminated), which the canonical form does not admit.
    #[error("operation requires a nested primitive: {0}")]
    PrimitiveDepth(String),
    /// An argument violates a documented precondition.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

/// Convenience alias for results of algebra operations.
pub type Result<T, E = Error> = std::result::Result<T, E>;

/// An average factor `av(...)`: the mean over the circle of a product of
/// field derivatives. The body is a single monic, average- and
/// primitive-free monomial held in integration-by-parts canonical form.
///
/// Derivative orders are stored as ascending multisets; order `0` denotes
/// the field itself (`u` or `v`).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Avg {
    pub(crate) uders: Vec<u32>,
    pub(crate) vders: Vec<u32>,
}

impl Avg {
    /// Polynomial degree of the averaged product.
    pub fn degree(&self) -> usize {
        self.uders.len() + self.vders.len()
    }

    /// Derivative orders of the `u`-factors inside the average (ascending).
    pub fn u_orders(&self) -> &[u32] {
        &self.uders
    }

    /// Derivative orders of the `v`-factors inside the average (ascending).
    pub fn v_orders(&self) -> &[u32] {
        &self.vders
    }
}

fn cmp_orders_graded(a: &[u32], b: &[u32]) -> Ordering {
    // Compare descending-sorted order tuples lexicographically; inputs are
    // stored ascending, so iterate in reverse. A tuple that runs out first
    // compares greater: at equal total degree the missing factors sit inside
    // average or primitive content, and free-field terms sort first.
    let mut ia = a.iter().rev();
    let mut ib = b.iter().rev();
    loop {
        match (ia.next(), ib.next()) {
            (None, None) => return Ordering::Equal,
            (None, Some(_)) => return Ordering::Greater,
            (Some(_), None) => return Ordering::Less,
            (Some(x), Some(y)) => match x.cmp(y) {
                Ordering::Equal => continue,
                other => return other,
            },
        }
    }
}

impl PartialOrd for Avg {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Avg {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| cmp_orders_graded(&self.uders, &other.uders))
            .then_with(|| cmp_orders_graded(&self.vders, &other.vders))
    }
}

/// A primitive factor `pr(...)`: the unique zero-average antiderivative of
/// a zero-average integrand that is not exactly integrable. The integrand
/// is canonical with a monic leading term and contains no primitive factors
/// itself (primitives never nest in canonical form).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Prim {
    pub(crate) body: Box<DiffPoly>,
}

impl Prim {
    /// The integrand of the primitive.
    pub fn integrand(&self) -> &DiffPoly {
        &self.body
    }

    /// Polynomial degree of the primitive (the degree of its integrand:
    /// integration in `x` does not change the number of field factors).
    pub fn degree(&self) -> usize {
        self.body.degree()
    }
}

impl PartialOrd for Prim {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Prim {
    fn cmp(&self, other: &Self) -> Ordering {
        self.body.cmp(&other.body)
    }
}

/// The coefficient-free part of a monomial: derivative factors of the two
/// fields, average factors, primitive factors and parameter powers.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub(crate) struct MonoKey {
    /// Derivative orders of `u`-factors, ascending multiset (0 = `u`).
    pub uders: Vec<u32>,
    /// Derivative orders of `v`-factors, ascending multiset (0 = `v`).
    pub vders: Vec<u32>,
    /// Average factors, ascending multiset.
    pub avgs: Vec<Avg>,
    /// Primitive factors, ascending multiset.
    pub prims: Vec<Prim>,
    /// Parameter powers, sorted by parameter, exponents nonzero. Only
    /// `alpha` may carry a negative exponent.
    pub params: Vec<(Param, i32)>,
}

impl MonoKey {
    pub fn unit() -> Self {
        MonoKey {
            uders: Vec::new(),
            vders: Vec::new(),
            avgs: Vec::new(),
            prims: Vec::new(),
            params: Vec::new(),
        }
    }

    pub fn u_der(order: u32) -> Self {
        MonoKey {
            uders: vec![order],
            ..MonoKey::unit()
        }
    }

    pub fn v_der(order: u32) -> Self {
        MonoKey {
            vders: vec![order],
            ..MonoKey::unit()
        }
    }

    /// Total polynomial degree: every field factor counts once, including
    /// those inside average and primitive factors.
    pub fn degree(&self) -> usize {
        self.uders.len()
            + self.vders.len()
            + self.avgs.iter().map(Avg::degree).sum::<usize>()
            + self.prims.iter().map(Prim::degree).sum::<usize>()
    }

    /// Whether the key contains any field dependence at all (free factors,
    /// averages and primitives included). Keys without field dependence are
    /// pure parameter constants.
    pub fn is_param_constant(&self) -> bool {
        self.uders.is_empty() && self.vders.is_empty() && self.avgs.is_empty() && self.prims.is_empty()
    }

    /// Whether the key is constant in `x` (no free derivative factors and
    /// no primitive factors; averages and parameters are `x`-constants).
    pub fn is_x_constant(&self) -> bool {
        self.uders.is_empty() && self.vders.is_empty() && self.prims.is_empty()
    }

    /// Product of two keys (multiset unions; parameter exponents add).
    pub fn mul(&self, other: &MonoKey) -> MonoKey {
        let mut key = MonoKey {
            uders: merge_sorted(&self.uders, &other.uders),
            vders: merge_sorted(&self.vders, &other.vders),
            avgs: merge_sorted(&self.avgs, &other.avgs),
            prims: merge_sorted(&self.prims, &other.prims),
            params: Vec::with_capacity(self.params.len() + other.params.len()),
        };
        let (mut i, mut j) = (0, 0);
        while i < self.params.len() || j < other.params.len() {
            let pick_left = match (self.params.get(i), other.params.get(j)) {
                (Some(a), Some(b)) => {
                    if a.0 == b.0 {
                        let e = a.1 + b.1;
                        if e != 0 {
                            key.params.push((a.0, e));
                        }
                        i += 1;
                        j += 1;
                        continue;
                    }
                    a.0 < b.0
                }
                (Some(_), None) => true,
                (None, Some(_)) => false,
                (None, None) => unreachable!(),
            };
            if pick_left {
                key.params.push(self.params[i]);
                i += 1;
            } else {
                key.params.push(other.params[j]);
                j += 1;
            }
        }
        key
    }
}

fn power_rat(value: &Rat, exp: i32) -> Rat {
    let mag = value.pow(exp.unsigned_abs() as i32);
    if exp < 0 {
        mag.recip()
    } else {
        mag
    }
}

fn merge_sorted<T: Ord + Clone>(a: &[T], b: &[T]) -> Vec<T> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    out.extend_from_slice(a);
    out.extend_from_slice(b);
    out.sort();
    out
}

impl PartialOrd for MonoKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for MonoKey {
    /// Canonical graded monomial order (ascending "simplicity"):
    /// 1. total polynomial degree (averages/primitives included),
    /// 2. descending-sorted `u`-derivative tuple, compared lexicographically,
    /// 3. descending-sorted `v`-derivative tuple, likewise,
    /// 4. number of average factors, then the factors themselves,
    /// 5. number of primitive factors, then the factors themselves,
    /// 6. parameter powers.
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| cmp_orders_graded(&self.uders, &other.uders))
            .then_with(|| cmp_orders_graded(&self.vders, &other.vders))
            .then_with(|| self.avgs.len().cmp(&other.avgs.len()))
            .then_with(|| self.avgs.cmp(&other.avgs))
            .then_with(|| self.prims.len().cmp(&other.prims.len()))
            .then_with(|| self.prims.cmp(&other.prims))
            .then_with(|| self.params.cmp(&other.params))
    }
}

/// A single term of a [`DiffPoly`]: a nonzero rational coefficient times a
/// product of derivative factors, average factors, primitive factors and
/// parameter powers.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Monomial {
    pub(crate) coeff: Rat,
    pub(crate) key: MonoKey,
}

impl Monomial {
    /// The rational coefficient (never zero).
    pub fn coeff(&self) -> &Rat {
        &self.coeff
    }

    /// Derivative orders of the free `u`-factors (ascending multiset).
    pub fn u_orders(&self) -> &[u32] {
        &self.key.uders
    }

    /// Derivative orders of the free `v`-factors (ascending multiset).
    pub fn v_orders(&self) -> &[u32] {
        &self.key.vders
    }

    /// Average factors (ascending multiset).
    pub fn avg_factors(&self) -> &[Avg] {
        &self.key.avgs
    }

    /// Primitive factors (ascending multiset).
    pub fn prim_factors(&self) -> &[Prim] {
        &self.key.prims
    }

    /// Parameter powers, sorted by parameter, exponents nonzero.
    pub fn param_powers(&self) -> &[(Param, i32)] {
        &self.key.params
    }

    /// Total polynomial degree.
    pub fn degree(&self) -> usize {
        self.key.degree()
    }
}

/// A differential polynomial: a finite sum of [`Monomial`]s with distinct
/// factor signatures, stored in the canonical graded order documented on
/// [`MonoKey::cmp`]. The zero polynomial has no terms.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct DiffPoly {
    pub(crate) terms: BTreeMap<MonoKey, Rat>,
}

impl DiffPoly {
    /// The zero polynomial.
    pub fn zero() -> Self {
        DiffPoly::default()
    }

    /// The constant polynomial `1`.
    pub fn one() -> Self {
        DiffPoly::constant(Rat::one())
    }

    /// A constant polynomial.
    pub fn constant(c: Rat) -> Self {
        let mut p = DiffPoly::zero();
        if !c.is_zero() {
            p.terms.insert(MonoKey::unit(), c);
        }
        p
    }

    /// The field derivative `u_kx` (`u` itself for `k = 0`).
    pub fn u_der(order: u32) -> Self {
        DiffPoly::from_key(MonoKey::u_der(order), Rat::one())
    }

    /// The field derivative `v_kx` (`v` itself for `k = 0`).
    pub fn v_der(order: u32) -> Self {
        DiffPoly::from_key(MonoKey::v_der(order), Rat::one())
    }

    /// A parameter power as a degree-zero polynomial. Negative exponents are
    /// only admitted for invertible parameters.
    ///
    /// # Panics
    /// If `exp < 0` and the parameter is not invertible.
    pub fn param(p: Param, exp: i32) -> Self {
        if exp == 0 {
            return DiffPoly::one();
        }
        assert!(
            exp > 0 || p.invertible(),
            "negative power of non-invertible parameter {p}"
        );
        DiffPoly::from_key(
            MonoKey {
                params: vec![(p, exp)],
                ..MonoKey::unit()
            },
            Rat::one(),
        )
    }

    pub(crate) fn from_key(key: MonoKey, coeff: Rat) -> Self {
        let mut p = DiffPoly::zero();
        p.add_key(key, coeff);
        p
    }

    pub(crate) fn add_key(&mut self, key: MonoKey, coeff: Rat) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(key) {
            Entry::Vacant(e) => {
                e.insert(coeff);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get() + &coeff;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    /// Whether this is the zero polynomial.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// Whether the polynomial has no terms (same as [`is_zero`](Self::is_zero)).
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Maximum total degree over all terms (0 for the zero polynomial).
    pub fn degree(&self) -> usize {
        self.terms.keys().map(MonoKey::degree).max().unwrap_or(0)
    }

    /// Whether every term is constant in `x` (averages and parameters only).
    pub fn is_x_constant(&self) -> bool {
        self.terms.keys().all(MonoKey::is_x_constant)
    }

    /// Iterates over the terms in canonical order.
    pub fn iter_terms(&self) -> impl Iterator<Item = Monomial> + '_ {
        self.terms.iter().map(|(key, coeff)| Monomial {
            coeff: coeff.clone(),
            key: key.clone(),
        })
    }

    /// The coefficient in `self` of the term carried by `probe`, divided by
    /// `probe`'s own coefficient (so a probe like `3*u*u_x` still reports the
    /// coefficient relative to `u*u_x = probe/3`).  Returns zero when `self`
    /// has no such term.
    ///
    /// Fails unless `probe` consists of exactly one term.
    pub fn coefficient_of(&self, probe: &DiffPoly) -> Result<Rat> {
        if probe.terms.len() != 1 {
            return Err(Error::InvalidArgument(format!(
                "coefficient probe must be a single term, got `{probe}`"
            )));
        }
        let (key, pc) = probe.terms.iter().next().expect("one term");
        Ok(self
            .terms
            .get(key)
            .map(|c| c / pc)
            .unwrap_or_else(Rat::zero))
    }

    /// The coefficient of the constant (field-free) part, parameters ignored
    /// entirely; returns the coefficient of the exact unit monomial.
    pub fn unit_coeff(&self) -> Rat {
        self.terms
            .get(&MonoKey::unit())
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    /// Evaluates parameters at rational values; parameters without an
    /// assignment remain symbolic. Average and primitive bodies never carry
    /// parameters, so only the free parameter powers are touched.
    ///
    /// Fails when a negative power of an assigned parameter meets the value
    /// zero.
    pub fn eval_params(&self, values: &[(Param, Rat)]) -> Result<DiffPoly> {
        let mut out = DiffPoly::zero();
        for (key, coeff) in &self.terms {
            let mut c = coeff.clone();
            let mut params = Vec::new();
            for &(param, exp) in &key.params {
                match values.iter().find(|(p, _)| *p == param) {
                    None => params.push((param, exp)),
                    Some((_, value)) => {
                        if value.is_zero() && exp < 0 {
                            return Err(Error::InvalidArgument(format!(
                                "negative power of `{param}` evaluated at zero"
                            )));
                        }
                        c *= power_rat(value, exp);
                    }
                }
            }
            out.add_key(
                MonoKey {
                    params,
                    ..key.clone()
                },
                c,
            );
        }
        Ok(out)
    }

    /// Sum of two polynomials.
    pub fn add(&self, other: &DiffPoly) -> DiffPoly {
        let mut out = self.clone();
        for (key, coeff) in &other.terms {
            out.add_key(key.clone(), coeff.clone());
        }
        out
    }

    /// Difference of two polynomials.
    pub fn sub(&self, other: &DiffPoly) -> DiffPoly {
        self.add(&other.neg())
    }

    /// Negation.
    pub fn neg(&self) -> DiffPoly {
        let mut out = DiffPoly::zero();
        for (key, coeff) in &self.terms {
            out.terms.insert(key.clone(), -coeff.clone());
        }
        out
    }

    /// Multiplication by a rational scalar.
    pub fn scale(&self, c: &Rat) -> DiffPoly {
        if c.is_zero() {
            return DiffPoly::zero();
        }
        let mut out = DiffPoly::zero();
        for (key, coeff) in &self.terms {
            out.terms.insert(key.clone(), coeff * c);
        }
        out
    }

    /// Product of two polynomials.
    pub fn mul(&self, other: &DiffPoly) -> DiffPoly {
        let mut out = DiffPoly::zero();
        for (ka, ca) in &self.terms {
            for (kb, cb) in &other.terms {
                out.add_key(ka.mul(kb), ca * cb);
            }
        }
        out
    }

    /// Integer power (`p^0 = 1`).
    pub fn pow(&self, n: u32) -> DiffPoly {
        let mut out = DiffPoly::one();
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }
}

impl PartialOrd for DiffPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for DiffPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        let mut ia = self.terms.iter();
        let mut ib = other.terms.iter();
        loop {
            match (ia.next(), ib.next()) {
                (None, None) => return Ordering::Equal,
                (None, Some(_)) => return Ordering::Less,
                (Some(_), None) => return Ordering::Greater,
                (Some((ka, ca)), Some((kb, cb))) => {
                    match ka.cmp(kb).then_with(|| ca.cmp(cb)) {
                        Ordering::Equal => continue,
                        other => return other,
                    }
                }
            }
        }
    }
}

impl std::hash::Hash for Monomial {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.coeff.hash(state);
        self.key.hash(state);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn graded_order_matches_hierarchy_listing() {
        // Degree first: u_3x (degree 1) before u*u_x (degree 2).
        let u3x = MonoKey::u_der(3);
        let uux = MonoKey {
            uders: vec![0, 1],
            ..MonoKey::unit()
        };
        assert!(u3x < uux);
        // Same degree: u_x*u_2x before u*u_3x (descending tuples (2,1) < (3,0)).
        let ux_u2x = MonoKey {
            uders: vec![1, 2],
            ..MonoKey::unit()
        };
        let u_u3x = MonoKey {
            uders: vec![0, 3],
            ..MonoKey::unit()
        };
        assert!(ux_u2x < u_u3x);
        // Degree 3 examples: u_x^3 < u*u_x*u_2x < u^2*u_3x.
        let ux3 = MonoKey {
            uders: vec![1, 1, 1],
            ..MonoKey::unit()
        };
        let u_ux_u2x = MonoKey {
            uders: vec![0, 1, 2],
            ..MonoKey::unit()
        };
        let u2_u3x = MonoKey {
            uders: vec![0, 0, 3],
            ..MonoKey::unit()
        };
        assert!(ux3 < u_ux_u2x);
        assert!(u_ux_u2x < u2_u3x);
    }

    #[test]
    fn arithmetic_merges_and_cancels() {
        let u = DiffPoly::u_der(0);
        let sum = u.add(&u.scale(&rat(-1, 1)));
        assert!(sum.is_zero());
        let p = u.mul(&u); // u^2
        assert_eq!(p.len(), 1);
        assert_eq!(p.degree(), 2);
        let sq = u.add(&DiffPoly::one()).pow(2); // (u+1)^2 = u^2 + 2u + 1
        assert_eq!(sq.len(), 3);
    }
}
