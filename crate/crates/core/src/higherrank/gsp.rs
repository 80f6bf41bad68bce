use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::corearith::RationalMatrix;
use crate::{Error, Result};

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `J = [[0, I], [−I, 0]]`.
pub fn symplectic_form(n: usize) -> RationalMatrix {
    let z = RationalMatrix::zeros(n, n);
    let i = RationalMatrix::identity(n);
    RationalMatrix::block(&z, &i, &i.scale(&rat(-1)), &z)
}

/// `ν` with `MᵀJM = νJ`, if `M` is a symplectic similitude.
pub fn similitude_factor(m: &RationalMatrix) -> Option<BigRational> {
    if m.rows() != m.cols() || m.rows() % 2 != 0 || m.rows() == 0 {
        return None;
    }
    let n = m.rows() / 2;
    let j = symplectic_form(n);
    let lhs = &(&m.transpose() * &j) * m;
    let nu = lhs[(0, n)].clone();
    (lhs == j.scale(&nu) && !nu.is_zero()).then_some(nu)
}

fn det2(g: &RationalMatrix) -> BigRational {
    &g[(0, 0)] * &g[(1, 1)] - &g[(0, 1)] * &g[(1, 0)]
}

/// `f_n(g₁, …, g_n) = [[diag aᵢ, diag bᵢ], [diag cᵢ, diag dᵢ]]` for
/// `gᵢ = [[aᵢ, bᵢ], [cᵢ, dᵢ]]` of a common determinant.
pub fn f_n(gs: &[RationalMatrix]) -> Result<RationalMatrix> {
    if gs.is_empty() {
        return Err(Error::validation("f_n needs at least one matrix"));
    }
    if gs.iter().any(|g| g.rows() != 2 || g.cols() != 2) {
        return Err(Error::validation("f_n takes 2×2 matrices"));
    }
    let nu = det2(&gs[0]);
    if nu.is_zero() {
        return Err(Error::validation("matrices must be invertible"));
    }
    if let Some(i) = gs.iter().position(|g| det2(g) != nu) {
        return Err(Error::validation(format!(
            "not in G_n: det(g_{}) = {} differs from det(g_1) = {}",
            i + 1,
            det2(&gs[i]),
            nu
        )));
    }
    let diag = |r: usize, c: usize| RationalMatrix::diagonal(&gs.iter().map(|g| g[(r, c)].clone()).collect::<Vec<_>>());
    Ok(RationalMatrix::block(&diag(0, 0), &diag(0, 1), &diag(1, 0), &diag(1, 1)))
}

/// `t·I` in `GSp_{2n}`.
pub fn scalar(n: usize, t: &BigRational) -> RationalMatrix {
    RationalMatrix::identity(2 * n).scale(t)
}
