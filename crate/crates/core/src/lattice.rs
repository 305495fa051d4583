//! Exact integer linear algebra and lattice I/O: basis parsing,
//! determinants, dual-codeword extraction, the Gaussian heuristic, and
//! basis-quality checks.
//!
//! All elimination is fraction-free (Bareiss / Montante), so nothing is
//! ever rounded; moduli around 10^126 are handled exactly.

use crate::error::{Error, Result};
use crate::projection::{DualCodeword, IntVec, Modulus};
use crate::real::{ln2, ln_biguint, pi, Real};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// A square integer basis given by its rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeBasis {
    rows: Vec<Vec<BigInt>>,
}

impl LatticeBasis {
    pub fn new(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::Format("empty matrix".into()));
        }
        let d = rows.len();
        if rows.iter().any(|r| r.len() != d) {
            return Err(Error::Format("matrix is not square".into()));
        }
        Ok(LatticeBasis { rows })
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }
}

/// Parse the bracketed row format (`[[1 0][3 7]]`, with or without the
/// outer pair, commas treated as whitespace) or plain one-row-per-line
/// integers.
pub fn parse_basis(text: &str) -> Result<LatticeBasis> {
    let rows = parse_rows(text)?;
    LatticeBasis::new(rows)
}

/// Row lists for vector files; same grammar, no squareness requirement.
pub fn parse_rows(text: &str) -> Result<Vec<Vec<BigInt>>> {
    if text.contains('[') {
        parse_bracketed(text)
    } else {
        let mut rows = Vec::new();
        for line in text.lines() {
            let toks: Vec<&str> = line.split([' ', '\t', ',']).filter(|t| !t.is_empty()).collect();
            if toks.is_empty() {
                continue;
            }
            let row: Result<Vec<BigInt>> = toks
                .iter()
                .map(|t| {
                    t.parse::<BigInt>()
                        .map_err(|_| Error::Format(format!("not an integer: '{t}'")))
                })
                .collect();
            rows.push(row?);
        }
        if rows.is_empty() {
            return Err(Error::Format("no rows found".into()));
        }
        check_rect(&rows)?;
        Ok(rows)
    }
}

#[derive(Debug, Clone)]
enum Node {
    List(Vec<Node>),
    Num(BigInt),
}

fn parse_nodes(text: &str) -> Result<Vec<Node>> {
    let mut stack: Vec<Vec<Node>> = Vec::new();
    let mut cur: Vec<Node> = Vec::new();
    let mut tok = String::new();
    let flush = |tok: &mut String, cur: &mut Vec<Node>| -> Result<()> {
        if tok.is_empty() {
            return Ok(());
        }
        let n = tok
            .parse::<BigInt>()
            .map_err(|_| Error::Format(format!("not an integer: '{tok}'")))?;
        tok.clear();
        cur.push(Node::Num(n));
        Ok(())
    };
    for ch in text.chars() {
        match ch {
            '[' => {
                flush(&mut tok, &mut cur)?;
                stack.push(std::mem::take(&mut cur));
            }
            ']' => {
                flush(&mut tok, &mut cur)?;
                let done = Node::List(std::mem::take(&mut cur));
                cur = stack.pop().ok_or_else(|| Error::Format("unbalanced ']'".into()))?;
                cur.push(done);
            }
            c if c.is_whitespace() || c == ',' => flush(&mut tok, &mut cur)?,
            c => tok.push(c),
        }
    }
    flush(&mut tok, &mut cur)?;
    if !stack.is_empty() {
        return Err(Error::Format("unbalanced '['".into()));
    }
    Ok(cur)
}

fn parse_bracketed(text: &str) -> Result<Vec<Vec<BigInt>>> {
    let nodes = parse_nodes(text)?;
    // peel an optional outer wrapper whose children are all rows
    let items: Vec<Node> = match nodes.as_slice() {
        [Node::List(children)]
            if !children.is_empty() && children.iter().all(|n| matches!(n, Node::List(_))) =>
        {
            children.clone()
        }
        _ => nodes,
    };
    let mut rows = Vec::with_capacity(items.len());
    for item in items {
        match item {
            Node::List(children) => {
                let row: Result<Vec<BigInt>> = children
                    .into_iter()
                    .map(|n| match n {
                        Node::Num(v) => Ok(v),
                        Node::List(_) => Err(Error::Format("brackets nested too deep".into())),
                    })
                    .collect();
                rows.push(row?);
            }
            Node::Num(v) => {
                return Err(Error::Format(format!("value '{v}' outside a row")));
            }
        }
    }
    if rows.is_empty() {
        return Err(Error::Format("no rows found".into()));
    }
    check_rect(&rows)?;
    Ok(rows)
}

fn check_rect(rows: &[Vec<BigInt>]) -> Result<()> {
    let w = rows[0].len();
    if rows.iter().any(|r| r.len() != w) {
        return Err(Error::Format("ragged rows".into()));
    }
    Ok(())
}

/// Re-emit rows in the bracketed format accepted by [`parse_rows`].
pub fn emit_rows(rows: &[Vec<BigInt>]) -> String {
    let mut out = String::from("[");
    for (i, row) in rows.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        out.push('[');
        for (j, e) in row.iter().enumerate() {
            if j > 0 {
                out.push(' ');
            }
            out.push_str(&e.to_string());
        }
        out.push(']');
    }
    out.push(']');
    out
}

/// Parse a positive integer in decimal or scientific notation
/// ("27064032706411", "3.13E+102", "1e12"). The value must be an integer.
pub fn parse_big_scientific(s: &str) -> Result<BigUint> {
    let s = s.trim();
    let (mant, exp) = match s.find(['e', 'E']) {
        Some(pos) => {
            let e: i64 = s[pos + 1..]
                .trim_start_matches('+')
                .parse()
                .map_err(|_| Error::Format(format!("bad exponent in '{s}'")))?;
            (&s[..pos], e)
        }
        None => (s, 0),
    };
    let (digits, frac_len) = match mant.find('.') {
        Some(p) => {
            let mut d = String::new();
            d.push_str(&mant[..p]);
            d.push_str(&mant[p + 1..]);
            (d, (mant.len() - p - 1) as i64)
        }
        None => (mant.to_string(), 0),
    };
    let scale = exp - frac_len;
    if scale < 0 {
        return Err(Error::Format(format!("'{s}' is not an integer")));
    }
    let base: BigUint =
        digits.parse().map_err(|_| Error::Format(format!("not a number: '{s}'")))?;
    Ok(base * BigUint::from(10u8).pow(scale as u32))
}

/// Exact signed determinant by fraction-free elimination; 0 for singular
/// input.
pub fn determinant(basis: &LatticeBasis) -> BigInt {
    bareiss_determinant(basis.rows.clone())
}

fn bareiss_determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = 1i8;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = num / &prev; // exact by the Bareiss identity
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign < 0 {
        -det
    } else {
        det
    }
}

/// Rank of an integer matrix over the rationals, by fraction-free
/// elimination.
pub fn integer_rank(rows: &[Vec<BigInt>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let mut m: Vec<Vec<BigInt>> = rows.to_vec();
    let nrows = m.len();
    let ncols = m[0].len();
    let mut rank = 0;
    let mut prev = BigInt::one();
    let mut col = 0;
    while rank < nrows && col < ncols {
        match (rank..nrows).find(|&i| !m[i][col].is_zero()) {
            None => {
                col += 1;
                continue;
            }
            Some(p) => m.swap(rank, p),
        }
        for i in rank + 1..nrows {
            for j in col + 1..ncols {
                let num = &m[i][j] * &m[rank][col] - &m[i][col] * &m[rank][j];
                m[i][j] = num / &prev;
            }
            m[i][col] = BigInt::zero();
        }
        prev = m[rank][col].clone();
        rank += 1;
        col += 1;
    }
    rank
}

/// Montante (fraction-free Gauss-Jordan) on [B | I]. Returns the pivot
/// determinant det' and R = det' * B^{-1}, all integer.
fn montante_inverse(basis: &LatticeBasis) -> Result<(BigInt, Vec<Vec<BigInt>>)> {
    let n = basis.dim();
    let mut m: Vec<Vec<BigInt>> = basis
        .rows
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }));
            r
        })
        .collect();
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => m.swap(k, i),
                None => return Err(Error::Singular),
            }
        }
        let pivot = m[k][k].clone();
        for i in 0..n {
            if i == k {
                continue;
            }
            let lead = m[i][k].clone();
            for j in 0..2 * n {
                let num = &m[i][j] * &pivot - &lead * &m[k][j];
                let (q, r) = num.div_rem(&prev);
                debug_assert!(r.is_zero(), "Montante division must be exact");
                m[i][j] = q;
            }
        }
        prev = pivot;
    }
    let det = m[0][0].clone();
    if det.is_zero() {
        return Err(Error::Singular);
    }
    debug_assert!((0..basis.dim()).all(|i| m[i][i] == det));
    let right: Vec<Vec<BigInt>> = m.into_iter().map(|row| row[n..].to_vec()).collect();
    Ok((det, right))
}

/// The dual matrix |det(B)| * (B^{-1})^T, integral for any integer basis.
pub fn dual_matrix(basis: &LatticeBasis) -> Result<(BigUint, Vec<Vec<BigInt>>)> {
    let n = basis.dim();
    let (det, r) = montante_inverse(basis)?;
    let flip = det.is_negative();
    let mut d = vec![vec![BigInt::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            d[i][j] = if flip { -r[j][i].clone() } else { r[j][i].clone() };
        }
    }
    // adjugate identity B * (det B^{-1}) = det I, checked exactly
    for i in 0..n {
        for j in 0..n {
            let mut acc = BigInt::zero();
            for k in 0..n {
                acc += &basis.rows[i][k] * &r[k][j];
            }
            let want = if i == j { det.clone() } else { BigInt::zero() };
            assert!(acc == want, "adjugate identity violated at ({i},{j})");
        }
    }
    Ok((det.magnitude().clone(), d))
}

/// Solve lambda * a = b (mod p); for prime p this is b * a^{-1}. Returns
/// all candidate residues (at most `limit` of them) for composite moduli.
fn scale_candidates(a: &BigInt, b: &BigInt, p: &BigInt, limit: usize) -> Vec<BigInt> {
    let g = a.gcd(p);
    if !(b % &g).is_zero() {
        return Vec::new();
    }
    let a1 = a / &g;
    let b1 = b / &g;
    let p1 = p / &g;
    let eg = a1.extended_gcd(&p1);
    let inv = eg.x.mod_floor(&p1);
    let base = (b1 * inv).mod_floor(&p1);
    let count = g.to_usize().unwrap_or(usize::MAX).min(limit);
    (0..count).map(|t| (&base + &p1 * BigInt::from(t)).mod_floor(p)).collect()
}

fn row_is_multiple(row: &[BigInt], rep: &[BigInt], p: &BigInt, prime: bool) -> bool {
    let j = match rep.iter().position(|e| !e.is_zero()) {
        Some(j) => j,
        None => return false,
    };
    let limit = if prime { 1 } else { 1024 };
    for lambda in scale_candidates(&rep[j], &row[j], p, limit) {
        if row
            .iter()
            .zip(rep)
            .all(|(r, s)| (r - &lambda * s).mod_floor(p).is_zero())
        {
            return true;
        }
    }
    false
}

/// Extract the single dual codeword of a co-dimension-1 lattice basis.
///
/// Computes D = P (B^{-1})^T with P = |det B|, reduces its rows mod P and
/// requires them to span a rank-1 space; the representative is the row
/// whose first nonzero entry is minimal. Every basis row is verified to
/// have zero projection against the returned codeword.
pub fn extract_dual_codeword(basis: &LatticeBasis) -> Result<(DualCodeword, Modulus)> {
    let (p_abs, dmat) = dual_matrix(basis)?;
    if p_abs < BigUint::from(2u8) {
        return Err(Error::config("lattice co-volume must be at least 2"));
    }
    let modulus = Modulus::new(p_abs)?;
    let codeword = codeword_from_dual_matrix(&dmat, &modulus)?;
    for row in basis.rows() {
        let w = IntVec::from_bigints(row.clone());
        let proj = codeword.project_mod(&w)?;
        assert!(proj.is_zero(), "extracted codeword must annihilate every basis row");
    }
    Ok((codeword, modulus))
}

fn codeword_from_dual_matrix(dmat: &[Vec<BigInt>], modulus: &Modulus) -> Result<DualCodeword> {
    let p = modulus.value_int();
    let reduced: Vec<Vec<BigInt>> = dmat
        .iter()
        .map(|row| row.iter().map(|e| e.mod_floor(&p)).collect())
        .collect();
    let nonzero: Vec<&Vec<BigInt>> =
        reduced.iter().filter(|r| r.iter().any(|e| !e.is_zero())).collect();
    if nonzero.is_empty() {
        return Err(Error::NotCodimensionOne { rank: 0 });
    }
    // representative: minimal first nonzero entry, then lexicographically
    let rep = nonzero
        .iter()
        .min_by(|a, b| {
            let fa = a.iter().find(|e| !e.is_zero()).unwrap();
            let fb = b.iter().find(|e| !e.is_zero()).unwrap();
            fa.cmp(fb).then_with(|| a.cmp(b))
        })
        .unwrap();
    let prime = modulus.is_prime();
    if !nonzero.iter().all(|row| row_is_multiple(row, rep, &p, prime)) {
        let rows_owned: Vec<Vec<BigInt>> = nonzero.iter().map(|r| (*r).clone()).collect();
        return Err(Error::NotCodimensionOne { rank: integer_rank(&rows_owned) });
    }
    DualCodeword::new((*rep).clone(), modulus.clone())
}

/// Expected shortest-vector length Gamma(d/2+1)^(1/d)/sqrt(pi) * det^(1/d),
/// evaluated in high-precision arithmetic.
pub fn gaussian_heuristic(d: u64, det: &BigUint) -> Result<Real> {
    if d < 1 || det < &BigUint::one() {
        return Err(Error::config("gaussian heuristic needs d >= 1 and det >= 1"));
    }
    // ln Gamma(d/2 + 1) from exact factorials:
    //   d even: ln((d/2)!)
    //   d odd:  Gamma(d/2+1) = (d+1)! / (4^m m!) * sqrt(pi), m = (d+1)/2
    let ln_gamma = if d % 2 == 0 {
        ln_biguint(&factorial(d / 2))
    } else {
        let m = (d + 1) / 2;
        let ln_num = ln_biguint(&factorial(d + 1));
        let ln_den = ln_biguint(&factorial(m)).add(&ln2().mul_u64(2 * m));
        let half_ln_pi = pi().ln().mul(&Real::from_ratio(&1.into(), &2.into()));
        ln_num.sub(&ln_den).add(&half_ln_pi)
    };
    let ln_gh = ln_gamma
        .add(&ln_biguint(det))
        .div(&Real::from_u64(d))
        .sub(&pi().ln().mul(&Real::from_ratio(&1.into(), &2.into())));
    Ok(ln_gh.exp())
}

fn factorial(n: u64) -> BigUint {
    let mut acc = BigUint::one();
    for i in 2..=n {
        acc *= BigUint::from(i);
    }
    acc
}

/// Membership test: w . v = 0 (mod P).
pub fn verify_membership(w: &[BigInt], codeword: &DualCodeword) -> Result<bool> {
    let v = IntVec::from_bigints(w.to_vec());
    Ok(codeword.project_mod(&v)?.is_zero())
}

/// A set of d lattice vectors is a basis iff its co-volume equals P.
pub fn is_basis(vectors: &[Vec<BigInt>], modulus: &Modulus) -> Result<bool> {
    let basis = LatticeBasis::new(vectors.to_vec())?;
    Ok(determinant(&basis).magnitude() == modulus.value())
}

/// Product of row lengths over the lattice co-volume; exactly 1 for an
/// orthogonal basis achieving the co-volume.
pub fn orthogonality_defect(vectors: &[Vec<BigInt>], modulus: &Modulus) -> Result<Real> {
    if !is_basis(vectors, modulus)? {
        return Err(Error::Basis("co-volume does not equal P".into()));
    }
    let mut prod_norm_sqr = BigUint::one();
    for row in vectors {
        prod_norm_sqr *= IntVec::from_bigints(row.clone()).norm_sqr();
    }
    let num = Real::from_biguint(&prod_norm_sqr).sqrt();
    Ok(num.div(&Real::from_biguint(modulus.value())))
}

/// Per-check results of the instance-level duality facts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DualityReport {
    /// cube corner vectors P e_i pair integrally with every basis row
    pub cube_corners_integral: bool,
    /// the extracted codeword pairs integrally with every basis row
    pub codeword_integral: bool,
    /// P (B^{-1})^T has integer entries (adjugate integrality)
    pub dual_matrix_integral: bool,
}

impl DualityReport {
    pub fn all_pass(&self) -> bool {
        self.cube_corners_integral && self.codeword_integral && self.dual_matrix_integral
    }
}

/// Check the duality facts on one basis instance.
pub fn verify_duality_facts(basis: &LatticeBasis) -> Result<DualityReport> {
    let (p_abs, dmat) = dual_matrix(basis)?;
    let modulus = Modulus::new(p_abs)?;
    Ok(duality_checks(basis, &dmat, &modulus))
}

pub(crate) fn duality_checks(
    basis: &LatticeBasis,
    dmat: &[Vec<BigInt>],
    modulus: &Modulus,
) -> DualityReport {
    let p = modulus.value_int();
    let n = basis.dim();

    // <x, P e_i>_P = x_i: integral pairing with every cube corner
    let cube_corners_integral = basis
        .rows()
        .iter()
        .all(|row| row.iter().all(|x| (x * &p).mod_floor(&p).is_zero()));

    // the codeword derived from the dual matrix pairs integrally with rows
    let codeword_integral = match codeword_from_dual_matrix(dmat, modulus) {
        Ok(cw) => basis.rows().iter().all(|row| {
            let w = IntVec::from_bigints(row.clone());
            cw.project_mod(&w).map(|x| x.is_zero()).unwrap_or(false)
        }),
        Err(_) => false,
    };

    // D must already be integral; recompute B . D^T = P B B^{-1} = P I mod P
    let dual_matrix_integral = (0..n).all(|i| {
        (0..n).all(|j| {
            let mut acc = BigInt::zero();
            for k in 0..n {
                acc += &basis.rows()[i][k] * &dmat[j][k];
            }
            acc.mod_floor(&p).is_zero()
        })
    });

    DualityReport { cube_corners_integral, codeword_integral, dual_matrix_integral }
}
