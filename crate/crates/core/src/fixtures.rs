//! Seeded generators for dual matrices with known structure.
//!
//! Canonical fixtures are assembled as `P (blocks) P^-1` where `P` is a
//! product of integer elementary row operations, so `P^-1` is exact and
//! integer. Entries are drawn from `[-3, 3]` unless stated otherwise.
//! Identical arguments reproduce identical fixtures bit-for-bit.

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dualmat::DualMatrix;
use crate::error::{Error, Result};
use crate::laws::LawKind;
use crate::matrix::RealMatrix;
use crate::svd::thin_svd;

/// Largest accepted condition number of the similarity `P`.
pub const MAX_CONDITION: f64 = 100.0;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn int_entry(rng: &mut ChaCha8Rng) -> f64 {
    rng.random_range(-3i32..=3) as f64
}

fn int_matrix(rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> RealMatrix {
    let data = (0..rows * cols).map(|_| int_entry(rng)).collect();
    RealMatrix::new(rows, cols, data).expect("finite integers")
}

fn condition(m: &RealMatrix) -> f64 {
    let sv = m.singular_values();
    sv[0] / sv[sv.len() - 1]
}

/// Integer `P` with integer inverse and `cond(P) <= MAX_CONDITION`.
fn unimodular(n: usize, rng: &mut ChaCha8Rng) -> (RealMatrix, RealMatrix) {
    if n < 2 {
        return (RealMatrix::identity(n), RealMatrix::identity(n));
    }
    loop {
        let mut p = DMatrix::<f64>::identity(n, n);
        let mut p_inv = DMatrix::<f64>::identity(n, n);
        for _ in 0..2 * n {
            let i = rng.random_range(0..n);
            let j = (i + rng.random_range(1..n)) % n;
            let s = if rng.random_bool(0.5) { 1.0 } else { -1.0 };
            // P <- (I + s e_i e_j^T) P, P^-1 <- P^-1 (I - s e_i e_j^T)
            let row_j = p.row(j).clone_owned();
            let mut row_i = p.row_mut(i);
            row_i += row_j * s;
            let col_i = p_inv.column(i).clone_owned();
            let mut col_j = p_inv.column_mut(j);
            col_j -= col_i * s;
        }
        let p = RealMatrix::from_inner(p);
        if condition(&p) <= MAX_CONDITION {
            return (p, RealMatrix::from_inner(p_inv));
        }
    }
}

/// Strictly diagonally dominant integer matrix, hence nonsingular.
fn dominant(n: usize, rng: &mut ChaCha8Rng) -> RealMatrix {
    let mut c = int_matrix(n, n, rng);
    for i in 0..n {
        let off: f64 = (0..n).filter(|&j| j != i).map(|j| c.get(i, j).abs()).sum();
        let sign = if rng.random_bool(0.5) { 1.0 } else { -1.0 };
        c.set(i, i, sign * (off + rng.random_range(1..=3) as f64));
    }
    c
}

/// Nilpotent Jordan matrix of size `m` and index exactly `k`: blocks of
/// size `k` followed by one shorter remainder block.
fn nilpotent_jordan(m: usize, k: usize) -> RealMatrix {
    let mut n = RealMatrix::zeros(m, m);
    let mut start = 0;
    while start < m {
        let size = k.min(m - start);
        for i in start..start + size - 1 {
            n.set(i, i + 1, 1.0);
        }
        start += size;
    }
    n
}

/// `sum_i N^(k-1-i) X N^i`.
fn power_sum(nil: &RealMatrix, x: &RealMatrix, k: usize) -> RealMatrix {
    let m = nil.rows();
    let mut acc = RealMatrix::zeros(m, m);
    for i in 0..k {
        acc = &acc + &(&(&nil.pow(k - 1 - i) * x) * &nil.pow(i));
    }
    acc
}

/// How the lower-right dual block `B4` in nilpotent coordinates is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum B4Mode {
    /// `B4 = 0`.
    Zero,
    /// A seeded element of the kernel of `X -> sum_i N^(k-1-i) X N^i`;
    /// entries are no longer integers.
    Constrained,
    /// Integer `B4` outside that kernel: the DDGI does not exist.
    Violating,
}

/// A fixture together with the canonical data it was built from:
/// `A = P diag(C, N) P^-1`, `B = P [[B1, B2], [B3, B4]] P^-1`.
#[derive(Debug, Clone)]
pub struct CanonicalFixture {
    pub p: RealMatrix,
    pub p_inv: RealMatrix,
    pub core: RealMatrix,
    pub nilpotent: RealMatrix,
    /// `[B1, B2, B3, B4]`.
    pub blocks: [RealMatrix; 4],
    /// Index of the real part.
    pub k: usize,
    pub matrix: DualMatrix,
}

impl CanonicalFixture {
    pub fn rank(&self) -> usize {
        self.core.rows()
    }

    /// `P M P^-1`.
    pub fn conjugate(&self, m: &RealMatrix) -> RealMatrix {
        &(&self.p * m) * &self.p_inv
    }
}

fn kernel_sample(nil: &RealMatrix, k: usize, rng: &mut ChaCha8Rng) -> RealMatrix {
    let m = nil.rows();
    // Column e_(i + m j) of the operator is the image of E_ij, stored
    // column-major like nalgebra.
    let mut op = DMatrix::<f64>::zeros(m * m, m * m);
    for j in 0..m {
        for i in 0..m {
            let mut e = RealMatrix::zeros(m, m);
            e.set(i, j, 1.0);
            let image = power_sum(nil, &e, k);
            op.set_column(
                i + m * j,
                &nalgebra::DVector::from_column_slice(image.inner().as_slice()),
            );
        }
    }
    let svd = thin_svd(&op);
    let mut out = nalgebra::DVector::<f64>::zeros(m * m);
    for (idx, &s) in svd.s.iter().enumerate() {
        if s <= 1e-9 {
            let coeff = int_entry(rng);
            out += svd.v.column(idx) * coeff;
        }
    }
    RealMatrix::from_inner(DMatrix::from_column_slice(m, m, out.as_slice()))
}

fn check_rank(n: usize, r: usize) -> Result<()> {
    if n == 0 || r == 0 || r > n {
        return Err(Error::BadShapeParams(format!(
            "need 1 <= r <= n, got n = {n}, r = {r}"
        )));
    }
    Ok(())
}

/// Canonical DDGI fixture with real part of index `k`.
///
/// Requires `1 <= r <= n` and, when `r < n`, `1 <= k <= n - r`; `k` is
/// ignored when `r = n`. `Violating` needs `r < n`.
pub fn gen_canonical(
    n: usize,
    r: usize,
    k: usize,
    mode: B4Mode,
    seed: u64,
) -> Result<CanonicalFixture> {
    check_rank(n, r)?;
    let m = n - r;
    if m > 0 && (k == 0 || k > m) {
        return Err(Error::BadShapeParams(format!(
            "index k = {k} needs 1 <= k <= n - r = {m}"
        )));
    }
    if m == 0 && mode == B4Mode::Violating {
        return Err(Error::BadShapeParams(
            "a violating B4 block needs r < n".to_string(),
        ));
    }
    let k = if m == 0 { 0 } else { k };
    let mut rng = rng(seed);
    let (p, p_inv) = unimodular(n, &mut rng);
    let core = dominant(r, &mut rng);
    let nilpotent = nilpotent_jordan(m, k.max(1));
    let b1 = int_matrix(r, r, &mut rng);
    let b2 = int_matrix(r, m, &mut rng);
    let b3 = int_matrix(m, r, &mut rng);
    let b4 = match mode {
        B4Mode::Zero => RealMatrix::zeros(m, m),
        B4Mode::Constrained => kernel_sample(&nilpotent, k, &mut rng),
        B4Mode::Violating => loop {
            let b4 = int_matrix(m, m, &mut rng);
            if power_sum(&nilpotent, &b4, k).max_abs() >= 1.0 {
                break b4;
            }
        },
    };
    let real = RealMatrix::block_diag(&core, &nilpotent);
    let dual = RealMatrix::from_blocks(&b1, &b2, &b3, &b4);
    let matrix = DualMatrix::new(&(&p * &real) * &p_inv, &(&p * &dual) * &p_inv)?;
    Ok(CanonicalFixture {
        p,
        p_inv,
        core,
        nilpotent,
        blocks: [b1, b2, b3, b4],
        k,
        matrix,
    })
}

/// Dual matrix whose DDGI exists; the real part has index `k`.
pub fn gen_ddgi_invertible(n: usize, r: usize, k: usize, seed: u64) -> Result<DualMatrix> {
    Ok(gen_canonical(n, r, k, B4Mode::Zero, seed)?.matrix)
}

/// Negative control for [`gen_ddgi_invertible`].
pub fn gen_ddgi_violating(n: usize, r: usize, k: usize, seed: u64) -> Result<DualMatrix> {
    Ok(gen_canonical(n, r, k, B4Mode::Violating, seed)?.matrix)
}

/// Dual matrix with a DGGI: real part `P diag(C, 0) P^-1`, index 1 when
/// `r < n`.
pub fn gen_group_invertible(n: usize, r: usize, seed: u64) -> Result<DualMatrix> {
    Ok(gen_canonical(n, r, 1, B4Mode::Zero, seed)?.matrix)
}

/// Negative control for [`gen_group_invertible`]: lower-right block nonzero.
pub fn gen_group_violating(n: usize, r: usize, seed: u64) -> Result<DualMatrix> {
    Ok(gen_canonical(n, r, 1, B4Mode::Violating, seed)?.matrix)
}

/// What fills the free blocks of the larger element of an ordered pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairTail {
    Random,
    /// `B = 0`, `Y4 = 0`, which reproduces `X̂`.
    Zero,
}

/// `Ŷ` above `X̂ = P (diag(C, 0) + ε[[X1, X2], [X3, 0]]) P^-1`:
/// `Ŷ = P (diag(C, B) + ε[[X1, X2 - C R2 B], [X3 - B R3 C, Y4]]) P^-1` with
/// `R2 = C^-2 X2`, `R3 = X3 C^-2` the off-diagonal blocks of the DGGI dual
/// part of `X̂`.
fn above(
    p: &RealMatrix,
    p_inv: &RealMatrix,
    core: &RealMatrix,
    dual: &RealMatrix,
    b: &RealMatrix,
    y4: &RealMatrix,
) -> DualMatrix {
    let n = p.rows();
    let r = core.rows();
    let m = n - r;
    let c_inv = core.try_inverse().expect("dominant core is nonsingular");
    let c_inv2 = &c_inv * &c_inv;
    let x1 = dual.block(0, 0, r, r);
    let x2 = dual.block(0, r, r, m);
    let x3 = dual.block(r, 0, m, r);
    let r2 = &c_inv2 * &x2;
    let r3 = &x3 * &c_inv2;
    let y2 = &x2 - &(&(core * &r2) * b);
    let y3 = &x3 - &(&(b * &r3) * core);
    let real = RealMatrix::block_diag(core, b);
    let dual = RealMatrix::from_blocks(&x1, &y2, &y3, y4);
    DualMatrix::new(&(p * &real) * p_inv, &(p * &dual) * p_inv).expect("square blocks")
}

/// `(X̂, Ŷ)` with `X̂` below `Ŷ` in the D-group order. Requires `1 <= r < n`.
pub fn gen_ordered_pair(n: usize, r: usize, seed: u64) -> Result<(DualMatrix, DualMatrix)> {
    gen_ordered_pair_with(n, r, PairTail::Random, seed)
}

pub fn gen_ordered_pair_with(
    n: usize,
    r: usize,
    tail: PairTail,
    seed: u64,
) -> Result<(DualMatrix, DualMatrix)> {
    check_rank(n, r)?;
    if r == n {
        return Err(Error::BadShapeParams(format!(
            "ordered pairs need r < n, got r = n = {n}"
        )));
    }
    let fixture = gen_canonical(n, r, 1, B4Mode::Zero, seed)?;
    let m = n - r;
    let mut rng = rng(seed ^ 0x5eed_0f0d);
    let (b, y4) = match tail {
        PairTail::Random => (int_matrix(m, m, &mut rng), int_matrix(m, m, &mut rng)),
        PairTail::Zero => (RealMatrix::zeros(m, m), RealMatrix::zeros(m, m)),
    };
    let dual = RealMatrix::from_blocks(
        &fixture.blocks[0],
        &fixture.blocks[1],
        &fixture.blocks[2],
        &fixture.blocks[3],
    );
    let y = above(&fixture.p, &fixture.p_inv, &fixture.core, &dual, &b, &y4);
    Ok((fixture.matrix, y))
}

/// `X̂ ≤ Ŷ ≤ Ẑ` in the D-group order, with real-part ranks `r1 < r2 < n`.
pub fn gen_ordered_chain(
    n: usize,
    r1: usize,
    r2: usize,
    seed: u64,
) -> Result<(DualMatrix, DualMatrix, DualMatrix)> {
    check_rank(n, r1)?;
    if !(r1 < r2 && r2 < n) {
        return Err(Error::BadShapeParams(format!(
            "chains need r1 < r2 < n, got r1 = {r1}, r2 = {r2}, n = {n}"
        )));
    }
    let fixture = gen_canonical(n, r1, 1, B4Mode::Zero, seed)?;
    let mut rng = rng(seed ^ 0xc4a1_0f0d);
    let (m1, m2) = (n - r1, n - r2);
    let step = r2 - r1;

    // Middle element: B = diag(B1, 0), Y4 with zero trailing m2 x m2 block,
    // so Ŷ is group invertible with core diag(C, B1).
    let b1 = dominant(step, &mut rng);
    let b = RealMatrix::block_diag(&b1, &RealMatrix::zeros(m2, m2));
    let mut y4 = int_matrix(m1, m1, &mut rng);
    for i in step..m1 {
        for j in step..m1 {
            y4.set(i, j, 0.0);
        }
    }
    let x_dual = RealMatrix::from_blocks(
        &fixture.blocks[0],
        &fixture.blocks[1],
        &fixture.blocks[2],
        &fixture.blocks[3],
    );
    let y = above(&fixture.p, &fixture.p_inv, &fixture.core, &x_dual, &b, &y4);

    let y_core = RealMatrix::block_diag(&fixture.core, &b1);
    let y_dual = &(&fixture.p_inv * y.dual()) * &fixture.p;
    let b_top = int_matrix(m2, m2, &mut rng);
    let y4_top = int_matrix(m2, m2, &mut rng);
    let z = above(
        &fixture.p,
        &fixture.p_inv,
        &y_core,
        &y_dual,
        &b_top,
        &y4_top,
    );
    Ok((fixture.matrix, y, z))
}

/// How the polynomials of a commuting pair are drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Polynomial {
    /// Degree at most 2 with integer coefficients.
    Seeded,
    /// Constants: every part is a multiple of `I`.
    Constant,
}

fn householder(n: usize, rng: &mut ChaCha8Rng) -> RealMatrix {
    let mut q = RealMatrix::identity(n);
    for _ in 0..2 {
        let v: Vec<f64> = loop {
            let v: Vec<f64> = (0..n).map(|_| int_entry(rng)).collect();
            if v.iter().any(|&x| x != 0.0) {
                break v;
            }
        };
        let v = RealMatrix::column(&v).expect("finite");
        let vv = (&v.transpose() * &v).get(0, 0);
        let h = &RealMatrix::identity(n) - &(&(&v * &v.transpose()) * (2.0 / vv));
        q = &q * &h;
    }
    q
}

/// Seeded diagonalizable `M = L D R` for `kind`, with eigenvalue 0 present
/// when `n >= 2`: `S diag(λ) S^-1` (group), plus a `J2(0)` block (Drazin),
/// or `Q diag(λ) Q^T` with orthogonal `Q` (MP and core). Returns `(L, D, R)`.
fn base_factors(
    kind: LawKind,
    n: usize,
    rng: &mut ChaCha8Rng,
) -> (RealMatrix, RealMatrix, RealMatrix) {
    let mut eig: Vec<f64> = (0..n).map(|_| int_entry(rng)).collect();
    if n >= 2 {
        eig[0] = 0.0;
    }
    let mut d = RealMatrix::from_diagonal(&eig);
    match kind {
        LawKind::Group | LawKind::Drazin => {
            let (s, s_inv) = unimodular(n, rng);
            if kind == LawKind::Drazin && n >= 2 {
                d.set(1, 1, 0.0);
                d.set(0, 1, 1.0);
            }
            (s, d, s_inv)
        }
        LawKind::MoorePenrose | LawKind::Core => {
            let q = householder(n, rng);
            let qt = q.transpose();
            (q, d, qt)
        }
    }
}

/// `p(D)` for a seeded integer polynomial `p`; exact, since `D` is integer.
fn polynomial(d: &RealMatrix, poly: Polynomial, rng: &mut ChaCha8Rng) -> RealMatrix {
    let n = d.rows();
    let c0 = int_entry(rng);
    match poly {
        Polynomial::Constant => RealMatrix::identity(n).scale(c0),
        Polynomial::Seeded => {
            let c1 = int_entry(rng);
            let c2 = int_entry(rng);
            let d2 = d * d;
            &(&RealMatrix::identity(n).scale(c0) + &d.scale(c1)) + &d2.scale(c2)
        }
    }
}

/// `(Â, Ĉ)` whose four parts are polynomials in one seeded matrix, so every
/// commutation hypothesis of the `kind` order laws holds. `AC` is never zero.
pub fn gen_commuting_pair(kind: LawKind, n: usize, seed: u64) -> Result<(DualMatrix, DualMatrix)> {
    gen_commuting_pair_with(kind, n, Polynomial::Seeded, seed)
}

pub fn gen_commuting_pair_with(
    kind: LawKind,
    n: usize,
    poly: Polynomial,
    seed: u64,
) -> Result<(DualMatrix, DualMatrix)> {
    if n == 0 {
        return Err(Error::BadShapeParams("n must be at least 1".to_string()));
    }
    let mut rng = rng(seed);
    // Polynomials are evaluated on D and conjugated afterwards, so a vanishing
    // p(M) is exactly zero. Draws whose real parts multiply to zero are
    // redrawn: in floating point that product is round-off, not zero.
    let (l, d, r) = base_factors(kind, n, &mut rng);
    let conj = |m: &RealMatrix| &(&l * m) * &r;
    loop {
        let parts: Vec<RealMatrix> = (0..4).map(|_| polynomial(&d, poly, &mut rng)).collect();
        if (&parts[0] * &parts[2]).max_abs() == 0.0 {
            continue;
        }
        let a = DualMatrix::new(conj(&parts[0]), conj(&parts[1]))?;
        let c = DualMatrix::new(conj(&parts[2]), conj(&parts[3]))?;
        return Ok((a, c));
    }
}
