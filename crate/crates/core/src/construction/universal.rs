//! The maps `e_β : H → H₁(B)`, `h ↦ h(β)`, for an algebra map
//! `H → End(H₁(B))`.

use super::{ConstructionError, ConstructionResult};
use crate::algebra::HodgeAlgebra;
use crate::hodge::{flatten, omega_adjoint, WeightOneHS};
use crate::linalg::{rank, unit_vector, Matrix, Subspace};
use crate::report::ReportBlock;
use crate::scalars::{Rational, Scalar};

/// `h ↦ L_h` on the algebra basis.
pub fn left_regular<S: Scalar>(a: &HodgeAlgebra<S>) -> Vec<Matrix<Rational>> {
    let n = a.dim();
    (0..n)
        .map(|i| {
            a.structure_constants()
                .left_matrix(&unit_vector::<Rational>(n, i))
        })
        .collect()
}

fn validate_embedding<S: Scalar>(
    a: &HodgeAlgebra<S>,
    b: &WeightOneHS<S>,
    emb: &[Matrix<Rational>],
) -> Result<(), ConstructionError> {
    let n = a.dim();
    let m = b.rank();
    if emb.len() != n || emb.iter().any(|e| e.rows() != m || e.cols() != m) {
        return Err(ConstructionError::Embedding(format!(
            "expected {n} matrices of size {m}x{m}"
        )));
    }
    let combo = |v: &[Rational]| {
        let mut acc = Matrix::zeros(m, m);
        for (c, e) in v.iter().zip(emb) {
            if !c.is_zero() {
                acc = acc.add(&e.scale(c)).expect("square");
            }
        }
        acc
    };
    if combo(a.unit()) != Matrix::identity(m) {
        return Err(ConstructionError::Embedding(
            "the unit is not sent to the identity".into(),
        ));
    }
    for i in 0..n {
        for j in 0..n {
            let prod = a.mul(&unit_vector::<Rational>(n, i), &unit_vector(n, j));
            if combo(&prod) != emb[i].mul(&emb[j])? {
                return Err(ConstructionError::Embedding(format!(
                    "not multiplicative on basis pair ({i}, {j})"
                )));
            }
        }
    }
    let image = Subspace::span(m * m, &emb.iter().map(flatten).collect::<Vec<_>>());
    for e in emb {
        if !image.contains(&flatten(&omega_adjoint(b.omega(), e)?)) {
            return Err(ConstructionError::Embedding(
                "image is not stable under the omega-adjoint".into(),
            ));
        }
    }
    Ok(())
}

/// Checks that every `e_β` is a morphism of weight-1 structures and reports
/// surjectivity of `⊕ e_β` and injectivity of `(e_β)`.
pub fn e_beta_maps<S: Scalar>(
    a: &HodgeAlgebra<S>,
    result: &ConstructionResult<S>,
    b: &WeightOneHS<S>,
    embedding: &[Matrix<Rational>],
    betas: &[Vec<Rational>],
) -> Result<ReportBlock, ConstructionError> {
    let h10 = result
        .w1
        .exact()
        .ok_or_else(|| {
            ConstructionError::Embedding("the constructed structure is only known in floats".into())
        })?
        .h10();
    validate_embedding(a, b, embedding)?;
    let n = a.dim();
    let m = b.rank();
    let mut rep = ReportBlock::new("e_beta_maps");
    let mut maps = Vec::new();
    for (idx, beta) in betas.iter().enumerate() {
        if beta.len() != m {
            return Err(ConstructionError::Embedding(format!(
                "beta {idx} has length {}, expected {m}",
                beta.len()
            )));
        }
        let cols: Vec<Vec<Rational>> = embedding
            .iter()
            .map(|e| e.mul_vec(beta).expect("square"))
            .collect();
        let eb = Matrix::from_columns(m, &cols)?;
        let image = h10.image(&eb.to_scalar())?;
        rep.push(
            format!("morphism[beta {idx}]"),
            image.is_subspace_of(b.h10()),
            format!("dim e_beta(h10) = {}", image.dim()),
        );
        maps.push(eb);
    }
    let sum = Matrix::hstack(&maps)?;
    let stacked = Matrix::stack_rows(&maps)?;
    let rs = rank(&sum);
    let ri = rank(&stacked);
    rep.push("sum-surjective", rs == m, format!("rank {rs} of {m}"));
    rep.push("stacked-injective", ri == n, format!("rank {ri} of {n}"));
    Ok(rep)
}
