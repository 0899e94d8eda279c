//! The mutually recursive algebraic core: spatial derivation, canonical
//! averages (integration by parts), zero-average antiderivatives and
//! canonicalization.

use num_traits::{One, Zero};

use crate::expr::{Avg, DiffPoly, Error, MonoKey, Prim, Result};
use crate::rational::Rat;

/// Recursion guard for average reduction involving primitive factors.
/// Pipeline expressions close after one or two eliminations; anything
/// deeper indicates a genuinely irreducible product.
const MAX_PRIM_ELIMINATIONS: u32 = 16;

impl DiffPoly {
    /// The spatial derivative. Average factors are constants; a primitive
    /// factor differentiates to its integrand.
    pub fn dx(&self) -> DiffPoly {
        let mut out = DiffPoly::zero();
        for (key, coeff) in &self.terms {
            // Product rule over the free u-factors.
            for i in 0..key.uders.len() {
                let mut k = key.clone();
                k.uders.remove(i);
                let raised = k.mul(&MonoKey::u_der(key.uders[i] + 1));
                out.add_key(raised, coeff.clone());
            }
            // ... the free v-factors ...
            for i in 0..key.vders.len() {
                let mut k = key.clone();
                k.vders.remove(i);
                let raised = k.mul(&MonoKey::v_der(key.vders[i] + 1));
                out.add_key(raised, coeff.clone());
            }
            // ... and the primitive factors, each of which differentiates to
            // its integrand (a full polynomial).
            for i in 0..key.prims.len() {
                let mut k = key.clone();
                let prim = k.prims.remove(i);
                let replaced = DiffPoly::from_key(k, coeff.clone()).mul(prim.integrand());
                out = out.add(&replaced);
            }
        }
        out
    }

    /// Repeated spatial derivative.
    pub fn dx_n(&self, n: u32) -> DiffPoly {
        let mut out = self.clone();
        for _ in 0..n {
            out = out.dx();
        }
        out
    }
}

/// The canonical average of a polynomial over the circle.
///
/// Averages are reduced with integration by parts until each surviving
/// average factor is in canonical form (see [`crate::DiffPoly`]); averages of
/// products containing a primitive factor are eliminated by moving the
/// antiderivative onto the cofactor. The result contains no free derivative
/// or primitive factors.
pub fn average(p: &DiffPoly) -> Result<DiffPoly> {
    average_depth(p, 0)
}

fn average_depth(p: &DiffPoly, depth: u32) -> Result<DiffPoly> {
    let mut out = DiffPoly::zero();
    // Terms carrying a primitive factor are eliminated jointly per primitive:
    // the cofactors of one primitive often sum to an exact derivative even
    // when no single cofactor is one.
    let mut groups: std::collections::BTreeMap<Prim, DiffPoly> = Default::default();
    for (key, coeff) in &p.terms {
        match key.prims.len() {
            0 => out = out.add(&average_mono(key, depth)?.scale(coeff)),
            1 => {
                let mut cofactor = key.clone();
                let prim = cofactor.prims.pop().unwrap();
                groups
                    .entry(prim)
                    .or_default()
                    .add_key(cofactor, coeff.clone());
            }
            _ => {
                return Err(Error::PrimitiveDepth(
                    "average of a product of two primitive factors".into(),
                ));
            }
        }
    }
    for (prim, cofactor) in groups {
        // <R * pr(q)> = -<G * q> with G the zero-average antiderivative of
        // R - <R> (integration by parts; the boundary term vanishes, and
        // <R><pr(q)> = 0 because a primitive has zero mean).
        if depth >= MAX_PRIM_ELIMINATIONS {
            return Err(Error::PrimitiveDepth(
                "average of a primitive product does not close".into(),
            ));
        }
        let mean = average_depth(&cofactor, depth + 1)?;
        let g = antiderivative(&cofactor.sub(&mean))?;
        out = out.add(&average_depth(&g.mul(prim.integrand()), depth + 1)?.neg());
    }
    Ok(out)
}

/// Average of a single monic primitive-free monomial.
fn average_mono(key: &MonoKey, _depth: u32) -> Result<DiffPoly> {
    // Pull out the x-constant part (parameters and existing averages).
    let prefix = MonoKey {
        uders: Vec::new(),
        vders: Vec::new(),
        avgs: key.avgs.clone(),
        prims: Vec::new(),
        params: key.params.clone(),
    };
    let inner = ibp_average(&key.uders, &key.vders)?;
    Ok(inner.mul(&DiffPoly::from_key(prefix, Rat::one())))
}

/// Integration-by-parts reduction of the average of a pure product of field
/// derivatives. Returns a combination of canonical average factors.
///
/// Reduction rule: while the strictly highest derivative order `k >= 1`
/// occurs in exactly one factor, other factors exist, and (for mixed
/// two-field products) the other field carries no factor of order `k-1`,
/// rewrite `<u_kx R> = -<u_(k-1)x dx(R)>`. Terms regenerating the original
/// monomial (from `dx` raising an order-`k-1` factor of the same field) are
/// collected and solved for, e.g. `<u u_x u_2x> = -1/2 <u_x^3>`.
fn ibp_average(uders: &[u32], vders: &[u32]) -> Result<DiffPoly> {
    if uders.is_empty() && vders.is_empty() {
        return Ok(DiffPoly::one());
    }
    let total = uders.len() + vders.len();
    let max_u = uders.last().copied();
    let max_v = vders.last().copied();
    let k = max_u.unwrap_or(0).max(max_v.unwrap_or(0));

    if k == 0 {
        // <u^a v^b>: canonical.
        return Ok(avg_factor_poly(uders, vders));
    }
    if total == 1 {
        // <u_kx> = 0 for k >= 1.
        return Ok(DiffPoly::zero());
    }
    let count_k = uders.iter().filter(|&&o| o == k).count()
        + vders.iter().filter(|&&o| o == k).count();
    if count_k >= 2 {
        // Highest order is not unique: canonical (e.g. <u_x^2>).
        return Ok(avg_factor_poly(uders, vders));
    }
    // Peel the unique highest-order factor, unless it belongs to one field
    // while the other field carries an order k-1 factor (such mixed products
    // admit no strictly decreasing reduction; they are canonical as stored).
    let in_u = max_u == Some(k);
    let other_blocks = if in_u {
        vders.last().is_some_and(|&o| o + 1 >= k)
    } else {
        uders.last().is_some_and(|&o| o + 1 >= k)
    };
    if other_blocks {
        return Ok(avg_factor_poly(uders, vders));
    }

    // Rest of the product with the peeled factor removed.
    let mut rest_u = uders.to_vec();
    let mut rest_v = vders.to_vec();
    if in_u {
        rest_u.pop();
    } else {
        rest_v.pop();
    }
    let rest = DiffPoly::from_key(
        MonoKey {
            uders: rest_u,
            vders: rest_v,
            ..MonoKey::unit()
        },
        Rat::one(),
    );
    let lowered = if in_u {
        DiffPoly::u_der(k - 1)
    } else {
        DiffPoly::v_der(k - 1)
    };
    let expanded = lowered.mul(&rest.dx());

    let original = MonoKey {
        uders: uders.to_vec(),
        vders: vders.to_vec(),
        ..MonoKey::unit()
    };
    let mut self_coeff = Rat::zero();
    let mut others = DiffPoly::zero();
    for (key, coeff) in &expanded.terms {
        if *key == original {
            self_coeff += coeff;
        } else {
            others = others.add(&ibp_average(&key.uders, &key.vders)?.scale(coeff));
        }
    }
    // <m> = -self_coeff <m> - others  =>  <m> = -others / (1 + self_coeff).
    let denom = Rat::one() + self_coeff;
    debug_assert!(!denom.is_zero());
    Ok(others.neg().scale(&denom.recip()))
}

fn avg_factor_poly(uders: &[u32], vders: &[u32]) -> DiffPoly {
    DiffPoly::from_key(
        MonoKey {
            avgs: vec![Avg {
                uders: uders.to_vec(),
                vders: vders.to_vec(),
            }],
            ..MonoKey::unit()
        },
        Rat::one(),
    )
}

/// The unique zero-average antiderivative.
///
/// Requires `<p> = 0` (error otherwise). The exactly integrable part is
/// peeled off term by term; whatever remains becomes a single primitive
/// factor with monic integrand. The result `q` satisfies `dx(q) = p` and
/// `<q> = 0`.
pub fn antiderivative(p: &DiffPoly) -> Result<DiffPoly> {
    let mean = average(p)?;
    if !mean.is_zero() {
        return Err(Error::NonzeroAverage(format!(
            "antiderivative of `{p}` (average `{mean}`)"
        )));
    }
    let mut work = p.clone();
    let mut result = DiffPoly::zero();
    loop {
        let Some((key, coeff)) = work.terms.iter().find(|(k, _)| peelable(k)).map(|(k, c)| (k.clone(), c.clone()))
        else {
            break;
        };
        // The unique highest-order factor u_kx (or v_kx) integrates against
        // the same-field factors of order k-1: with j of those present,
        // u_kx * u_(k-1)x^j * rest = dx(u_(k-1)x^(j+1) * rest / (j+1)) - lower.
        let in_u = key.uders.last().copied().unwrap_or(0) >= key.vders.last().copied().unwrap_or(0);
        let mut lowered = key.clone();
        let k = if in_u {
            lowered.uders.pop().unwrap()
        } else {
            lowered.vders.pop().unwrap()
        };
        let slot = if in_u { &lowered.uders } else { &lowered.vders };
        let j = slot.iter().filter(|&&o| o == k - 1).count();
        let step = if in_u {
            MonoKey::u_der(k - 1)
        } else {
            MonoKey::v_der(k - 1)
        };
        let lowered = lowered.mul(&step);
        let piece = DiffPoly::from_key(lowered, coeff / Rat::from_integer((j as i64 + 1).into()));
        result = result.add(&piece);
        work = work.sub(&piece.dx());
    }
    if !work.is_zero() {
        if work.terms.keys().any(|k| !k.prims.is_empty()) {
            return Err(Error::PrimitiveDepth(format!(
                "antiderivative residual `{work}` contains a primitive factor"
            )));
        }
        // Residual is zero-average but not exactly integrable. Group its
        // field-carrying terms by x-constant prefix (averages, parameters);
        // each group becomes that constant times a primitive factor whose
        // integrand is mean-subtracted and monic in its leading term. The
        // leftover constants cancel because the residual has zero mean.
        let mut groups: std::collections::BTreeMap<MonoKey, DiffPoly> = Default::default();
        let mut leftover = DiffPoly::zero();
        for (key, coeff) in &work.terms {
            if key.uders.is_empty() && key.vders.is_empty() {
                leftover.add_key(key.clone(), coeff.clone());
                continue;
            }
            let constant = MonoKey {
                avgs: key.avgs.clone(),
                params: key.params.clone(),
                ..MonoKey::unit()
            };
            let field = MonoKey {
                uders: key.uders.clone(),
                vders: key.vders.clone(),
                ..MonoKey::unit()
            };
            groups.entry(constant).or_default().add_key(field, coeff.clone());
        }
        for (constant, field_part) in groups {
            let mean = average(&field_part)?;
            let body = field_part.sub(&mean);
            leftover = leftover.add(&DiffPoly::from_key(constant.clone(), Rat::one()).mul(&mean));
            let lead = body.terms.iter().next().map(|(_, c)| c.clone()).unwrap();
            let prim = Prim {
                body: Box::new(body.scale(&lead.recip())),
            };
            result.add_key(constant.mul(&MonoKey {
                prims: vec![prim],
                ..MonoKey::unit()
            }), lead);
        }
        debug_assert!(
            average(&leftover)?.is_zero(),
            "nonzero antiderivative leftover {leftover}"
        );
    }
    // Normalise to zero average.
    let shift = average(&result)?;
    Ok(result.sub(&shift))
}

/// Whether a monomial is exactly integrable by peeling its unique
/// highest-order derivative factor.
fn peelable(key: &MonoKey) -> bool {
    if !key.prims.is_empty() {
        return false;
    }
    let max_u = key.uders.last().copied();
    let max_v = key.vders.last().copied();
    let k = max_u.unwrap_or(0).max(max_v.unwrap_or(0));
    if k == 0 {
        return false;
    }
    let count_k = key.uders.iter().filter(|&&o| o == k).count()
        + key.vders.iter().filter(|&&o| o == k).count();
    if count_k != 1 {
        return false;
    }
    // All factors of the other field must sit at order <= k-2; otherwise
    // dx would regenerate order-k terms outside the collected power.
    let in_u = max_u == Some(k);
    let other_max = if in_u { max_v } else { max_u };
    if other_max.is_some_and(|o| o + 1 >= k) {
        return false;
    }
    true
}

/// The zero-average primitive of `p - <p>`; collapses to an exact
/// antiderivative whenever one exists.
pub(crate) fn primitive_of(p: &DiffPoly) -> Result<DiffPoly> {
    let mean = average(p)?;
    antiderivative(&p.sub(&mean))
}

/// Rebuilds a polynomial through the canonicalizing constructors:
/// averages are reduced by integration by parts, primitives are resolved to
/// exact antiderivatives where possible, terms are merged and sorted. The
/// operation is idempotent; expressions built through this crate's own
/// operations are already canonical.
pub fn canonicalize(p: &DiffPoly) -> Result<DiffPoly> {
    let mut out = DiffPoly::zero();
    for (key, coeff) in &p.terms {
        let base = MonoKey {
            uders: key.uders.clone(),
            vders: key.vders.clone(),
            avgs: Vec::new(),
            prims: Vec::new(),
            params: key.params.clone(),
        };
        let mut acc = DiffPoly::from_key(base, coeff.clone());
        for avg in &key.avgs {
            let body = DiffPoly::from_key(
                MonoKey {
                    uders: avg.uders.clone(),
                    vders: avg.vders.clone(),
                    ..MonoKey::unit()
                },
                Rat::one(),
            );
            acc = acc.mul(&average(&body)?);
        }
        for prim in &key.prims {
            acc = acc.mul(&primitive_of(&canonicalize(prim.integrand())?)?);
        }
        out = out.add(&acc);
    }
    Ok(out)
}
