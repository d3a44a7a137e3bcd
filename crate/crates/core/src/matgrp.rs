//! 2×2 matrices over GF(q): PSL₂(q) as canonical det-1 representatives and
//! PΓL₂(q) as semilinear pairs acting on it by conjugation.

use std::sync::Arc;

use thiserror::Error;

use crate::gf::{Field, FieldElem, GfError};
use crate::group::perm::{is_automorphism, Perm};
use crate::group::{AutGroup, Elem, Group, NONE, TABLE_LIMIT};

/// Largest q for which PSL₂(q) is enumerated.
pub const MAX_Q: u32 = 32;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatGroupError {
    #[error("q = {0} is too large to enumerate (limit {MAX_Q})")]
    FieldTooLarge(u32),
    #[error("q = {0} is not a prime power")]
    NotPrimePower(u32),
    #[error(transparent)]
    Field(#[from] GfError),
    #[error("matrix is not invertible")]
    NotInvertible,
    #[error("matrix does not represent an element of PSL2")]
    NotInPsl,
    #[error("frobenius exponent {0} out of range")]
    BadFrobenius(u32),
    #[error("induced map is not an automorphism")]
    NotBijective,
}

/// Entries `[a, b, c, d]` of `[[a, b], [c, d]]` as field codes.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat2(pub [u32; 4]);

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2([1, 0, 0, 1]);

    pub fn from_elems(f: &Field, rows: [[FieldElem; 2]; 2]) -> Result<Mat2, MatGroupError> {
        let code = |e: FieldElem| f.from_code(e.code()).map(|x| x.code());
        Ok(Mat2([
            code(rows[0][0])?,
            code(rows[0][1])?,
            code(rows[1][0])?,
            code(rows[1][1])?,
        ]))
    }

    /// Entries written as `z^k`, `0`, or prime-field integer literals.
    pub fn parse(f: &Field, rows: [[&str; 2]; 2]) -> Result<Mat2, MatGroupError> {
        let p = |s: &str| f.parse(s).map(|e| e.code());
        Ok(Mat2([p(rows[0][0])?, p(rows[0][1])?, p(rows[1][0])?, p(rows[1][1])?]))
    }

    pub fn format(&self, f: &Field) -> [[String; 2]; 2] {
        let s = |c: u32| f.format(f.from_code(c).expect("code in range")).expect("own field");
        [[s(self.0[0]), s(self.0[1])], [s(self.0[2]), s(self.0[3])]]
    }

    pub fn entries(&self, f: &Field) -> [[FieldElem; 2]; 2] {
        let e = |c: u32| f.from_code(c).expect("code in range");
        [[e(self.0[0]), e(self.0[1])], [e(self.0[2]), e(self.0[3])]]
    }
}

fn mat_mul(f: &Field, x: Mat2, y: Mat2) -> Mat2 {
    let [a, b, c, d] = x.0;
    let [e, g, h, k] = y.0;
    let m = |u, v| f.mul_code(u, v);
    Mat2([
        f.add_code(m(a, e), m(b, h)),
        f.add_code(m(a, g), m(b, k)),
        f.add_code(m(c, e), m(d, h)),
        f.add_code(m(c, g), m(d, k)),
    ])
}

fn det(f: &Field, x: Mat2) -> u32 {
    let [a, b, c, d] = x.0;
    f.sub_code(f.mul_code(a, d), f.mul_code(b, c))
}

/// Adjugate: `x · adj(x) = det(x) · I`.
fn adj(f: &Field, x: Mat2) -> Mat2 {
    let [a, b, c, d] = x.0;
    Mat2([d, f.neg_code(b), f.neg_code(c), a])
}

fn scale(f: &Field, s: u32, x: Mat2) -> Mat2 {
    Mat2(x.0.map(|e| f.mul_code(s, e)))
}

fn frob_pow(f: &Field, i: u32, x: Mat2) -> Mat2 {
    let mut y = x;
    for _ in 0..i {
        y = Mat2(y.0.map(|e| f.frob_code(e)));
    }
    y
}

/// Picks between `x` and `-x` (both det 1) by the log of the first
/// nonzero entry.
fn sign_canonical(f: &Field, x: Mat2) -> Mat2 {
    if f.characteristic() == 2 {
        return x;
    }
    let half = (f.order() - 1) / 2;
    let lead = *x.0.iter().find(|&&e| e != 0).expect("invertible matrix");
    if f.log_code(lead).expect("nonzero") < half {
        x
    } else {
        Mat2(x.0.map(|e| f.neg_code(e)))
    }
}

/// A scalar `s` with `s^2 = u`, for a square `u`.
fn sqrt_code(f: &Field, u: u32) -> u32 {
    if f.characteristic() == 2 {
        return f.pow_code(u, f.order() as u64 / 2);
    }
    let k = f.log_code(u).expect("nonzero");
    debug_assert_eq!(k % 2, 0);
    f.exp_code(k / 2)
}

/// Canonical PSL representative of a matrix whose determinant is a square.
fn psl_canonical(f: &Field, x: Mat2) -> Option<Mat2> {
    let dt = det(f, x);
    if dt == 0 || !f.is_square_code(dt) {
        return None;
    }
    let s = f.inv_code(sqrt_code(f, dt));
    Some(sign_canonical(f, scale(f, s, x)))
}

/// PGL canonical form: first nonzero entry scaled to 1.
fn pgl_canonical(f: &Field, x: Mat2) -> Option<Mat2> {
    if det(f, x) == 0 {
        return None;
    }
    let lead = *x.0.iter().find(|&&e| e != 0)?;
    Some(scale(f, f.inv_code(lead), x))
}

fn key(q: u32, x: Mat2) -> usize {
    let [a, b, c, d] = x.0.map(|e| e as usize);
    let q = q as usize;
    a + q * (b + q * (c + q * d))
}

fn split_prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|p| q.is_multiple_of(*p))?;
    let (mut r, mut n) = (q, 0);
    while r % p == 0 {
        r /= p;
        n += 1;
    }
    (r == 1).then_some((p, n))
}

/// PSL₂(q) with elements indexed 0.. (identity first, then by entry key).
pub struct Psl2 {
    field: Arc<Field>,
    elems: Vec<Mat2>,
    index: Vec<Elem>,
    inv: Vec<Elem>,
    table: Option<Vec<Elem>>,
    gens: Vec<Elem>,
}

impl std::fmt::Debug for Psl2 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "PSL2({})", self.field.order())
    }
}

/// PSL₂(q) over the default field of order q.
pub fn psl_group(q: u32) -> Result<Psl2, MatGroupError> {
    if q > MAX_Q {
        return Err(MatGroupError::FieldTooLarge(q));
    }
    let (p, n) = split_prime_power(q).ok_or(MatGroupError::NotPrimePower(q))?;
    Psl2::over(Arc::new(Field::new(p, n)?))
}

impl Psl2 {
    pub fn over(field: Arc<Field>) -> Result<Psl2, MatGroupError> {
        let q = field.order();
        if q > MAX_Q {
            return Err(MatGroupError::FieldTooLarge(q));
        }
        let f = field.as_ref();
        let mut elems = Vec::new();
        for a in 0..q {
            for b in 0..q {
                for c in 0..q {
                    for d in 0..q {
                        let m = Mat2([a, b, c, d]);
                        if det(f, m) == 1 && sign_canonical(f, m) == m && m != Mat2::IDENTITY {
                            elems.push(m);
                        }
                    }
                }
            }
        }
        elems.sort_by_key(|&m| key(q, m));
        elems.insert(0, Mat2::IDENTITY);
        let mut index = vec![NONE; (q as usize).pow(4)];
        for (i, &m) in elems.iter().enumerate() {
            index[key(q, m)] = i as Elem;
        }
        let mut g = Psl2 {
            field,
            elems,
            index,
            inv: Vec::new(),
            table: None,
            gens: Vec::new(),
        };
        g.inv = (0..g.elems.len()).map(|i| g.lookup(adj(g.f(), g.elems[i]))).collect();
        let n = g.field.degree();
        let mut gen_mats: Vec<Mat2> = (0..n).map(|i| Mat2([1, g.field.exp_code(i), 0, 1])).collect();
        gen_mats.push(Mat2([1, 0, 1, 1]));
        let mut gens: Vec<Elem> = gen_mats.into_iter().map(|m| g.lookup(m)).filter(|&e| e != 0).collect();
        gens.dedup();
        g.gens = gens;
        let order = g.elems.len();
        if order <= TABLE_LIMIT {
            let mut t = vec![0; order * order];
            for a in 0..order {
                for b in 0..order {
                    t[a * order + b] = g.mul_direct(a as Elem, b as Elem);
                }
            }
            g.table = Some(t);
        }
        Ok(g)
    }

    fn f(&self) -> &Field {
        &self.field
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    /// Index of a det-1 matrix (either sign).
    fn lookup(&self, m: Mat2) -> Elem {
        self.index[key(self.field.order(), sign_canonical(self.f(), m))]
    }

    fn mul_direct(&self, a: Elem, b: Elem) -> Elem {
        self.lookup(mat_mul(self.f(), self.elems[a as usize], self.elems[b as usize]))
    }

    /// Canonical representative of element `e`.
    pub fn matrix(&self, e: Elem) -> Mat2 {
        self.elems[e as usize]
    }

    /// Index of the class of `m`, which must have square determinant.
    pub fn element(&self, m: Mat2) -> Result<Elem, MatGroupError> {
        if det(self.f(), m) == 0 {
            return Err(MatGroupError::NotInvertible);
        }
        let c = psl_canonical(self.f(), m).ok_or(MatGroupError::NotInPsl)?;
        Ok(self.index[key(self.field.order(), c)])
    }
}

impl Group for Psl2 {
    fn order(&self) -> usize {
        self.elems.len()
    }

    fn mul(&self, a: Elem, b: Elem) -> Elem {
        match &self.table {
            Some(t) => t[a as usize * self.elems.len() + b as usize],
            None => self.mul_direct(a, b),
        }
    }

    fn inv(&self, a: Elem) -> Elem {
        self.inv[a as usize]
    }

    fn generators(&self) -> Vec<Elem> {
        self.gens.clone()
    }
}

/// `x -> mat · φ^frob(x) · mat⁻¹`, with `mat` a PGL₂(q) class.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Semilinear {
    pub mat: Mat2,
    pub frob: u32,
}

/// PΓL₂(q), which is Aut(PSL₂(q)), as semilinear pairs.
pub struct Pgaml2 {
    psl: Arc<Psl2>,
    base: Arc<dyn Group>,
    elems: Vec<Semilinear>,
    index: Vec<Elem>,
    inv: Vec<Elem>,
    gens: Vec<Elem>,
}

impl std::fmt::Debug for Pgaml2 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "PGammaL2({})", self.psl.field.order())
    }
}

impl Pgaml2 {
    pub fn new(psl: Arc<Psl2>) -> Pgaml2 {
        let f = psl.field.clone();
        let (q, n) = (f.order(), f.degree());
        let mut mats = Vec::new();
        for a in 0..q {
            for b in 0..q {
                for c in 0..q {
                    for d in 0..q {
                        let m = Mat2([a, b, c, d]);
                        if pgl_canonical(&f, m) == Some(m) && m != Mat2::IDENTITY {
                            mats.push(m);
                        }
                    }
                }
            }
        }
        mats.sort_by_key(|&m| key(q, m));
        mats.insert(0, Mat2::IDENTITY);
        let mut elems = Vec::with_capacity(mats.len() * n as usize);
        for frob in 0..n {
            elems.extend(mats.iter().map(|&mat| Semilinear { mat, frob }));
        }
        let mut index = vec![NONE; (q as usize).pow(4) * n as usize];
        for (i, s) in elems.iter().enumerate() {
            index[key(q, s.mat) * n as usize + s.frob as usize] = i as Elem;
        }
        let base: Arc<dyn Group> = psl.clone();
        let mut g = Pgaml2 {
            psl,
            base,
            elems,
            index,
            inv: Vec::new(),
            gens: Vec::new(),
        };
        g.inv = (0..g.elems.len()).map(|i| g.compute_inverse(g.elems[i])).collect();
        let mut gens: Vec<Semilinear> = g
            .psl
            .gens
            .iter()
            .map(|&k| Semilinear {
                mat: g.psl.matrix(k),
                frob: 0,
            })
            .collect();
        gens.push(Semilinear {
            mat: Mat2([f.zeta().code(), 0, 0, 1]),
            frob: 0,
        });
        if n > 1 {
            gens.push(Semilinear {
                mat: Mat2::IDENTITY,
                frob: 1,
            });
        }
        g.gens = gens
            .into_iter()
            .map(|s| g.element(s).expect("valid generator"))
            .collect();
        g
    }

    pub fn psl(&self) -> &Arc<Psl2> {
        &self.psl
    }

    fn f(&self) -> &Field {
        &self.psl.field
    }

    fn lookup(&self, s: Semilinear) -> Elem {
        let f = self.f();
        let mat = pgl_canonical(f, s.mat).expect("invertible");
        self.index[key(f.order(), mat) * f.degree() as usize + s.frob as usize]
    }

    fn compute_inverse(&self, s: Semilinear) -> Elem {
        let f = self.f();
        let n = f.degree();
        let back = (n - s.frob) % n;
        self.lookup(Semilinear {
            mat: frob_pow(f, back, adj(f, s.mat)),
            frob: back,
        })
    }

    /// Index of a semilinear map given by any invertible matrix.
    pub fn element(&self, s: Semilinear) -> Result<Elem, MatGroupError> {
        let f = self.f();
        if s.frob >= f.degree() {
            return Err(MatGroupError::BadFrobenius(s.frob));
        }
        if det(f, s.mat) == 0 {
            return Err(MatGroupError::NotInvertible);
        }
        Ok(self.lookup(s))
    }

    pub fn semilinear(&self, e: Elem) -> Semilinear {
        self.elems[e as usize]
    }

    /// Conjugation by an invertible matrix, as an element of this group.
    pub fn conjugation_by(&self, m: Mat2) -> Result<Elem, MatGroupError> {
        self.element(Semilinear { mat: m, frob: 0 })
    }

    pub fn frobenius(&self) -> Elem {
        self.lookup(Semilinear {
            mat: Mat2::IDENTITY,
            frob: 1 % self.f().degree(),
        })
    }

    /// Whether `e` acts as an inner automorphism of PSL₂(q).
    pub fn is_inner(&self, e: Elem) -> bool {
        let s = self.elems[e as usize];
        s.frob == 0 && self.f().is_square_code(det(self.f(), s.mat))
    }

    /// `s(x)` for a PSL element `x`.
    pub fn act(&self, s: Semilinear, x: Elem) -> Result<Elem, MatGroupError> {
        let e = self.element(s)?;
        Ok(self.apply(e, x))
    }

    /// The permutation of PSL₂(q) induced by `e`, verified to be an
    /// automorphism.
    pub fn to_perm(&self, e: Elem) -> Result<Perm, MatGroupError> {
        let p = self.permutation(e);
        if is_automorphism(self.psl.as_ref(), &p) {
            Ok(p)
        } else {
            Err(MatGroupError::NotBijective)
        }
    }
}

impl Group for Pgaml2 {
    fn order(&self) -> usize {
        self.elems.len()
    }

    fn mul(&self, a: Elem, b: Elem) -> Elem {
        let (s, t) = (self.elems[a as usize], self.elems[b as usize]);
        let f = self.f();
        let mat = mat_mul(f, s.mat, frob_pow(f, s.frob, t.mat));
        self.lookup(Semilinear {
            mat,
            frob: (s.frob + t.frob) % f.degree(),
        })
    }

    fn inv(&self, a: Elem) -> Elem {
        self.inv[a as usize]
    }

    fn generators(&self) -> Vec<Elem> {
        self.gens.clone()
    }
}

impl AutGroup for Pgaml2 {
    fn base(&self) -> &Arc<dyn Group> {
        &self.base
    }

    fn apply(&self, phi: Elem, k: Elem) -> Elem {
        let s = self.elems[phi as usize];
        if phi == 0 {
            return k;
        }
        let f = self.f();
        let x = frob_pow(f, s.frob, self.psl.matrix(k));
        let y = mat_mul(f, mat_mul(f, s.mat, x), adj(f, s.mat));
        self.psl.element(y).expect("conjugate of a PSL element")
    }

    fn conjugation(&self, k: Elem) -> Elem {
        self.lookup(Semilinear {
            mat: self.psl.matrix(k),
            frob: 0,
        })
    }
}

/// Multiplicative order of a matrix in GL₂(q).
pub fn matrix_order(f: &Field, m: Mat2) -> Result<u64, MatGroupError> {
    if det(f, m) == 0 {
        return Err(MatGroupError::NotInvertible);
    }
    let mut x = m;
    let mut k = 1;
    while x != Mat2::IDENTITY {
        x = mat_mul(f, x, m);
        k += 1;
    }
    Ok(k)
}

pub fn matrix_product(f: &Field, ms: &[Mat2]) -> Mat2 {
    ms.iter().fold(Mat2::IDENTITY, |acc, &m| mat_mul(f, acc, m))
}

pub fn matrix_pow(f: &Field, m: Mat2, k: u32) -> Mat2 {
    (0..k).fold(Mat2::IDENTITY, |acc, _| mat_mul(f, acc, m))
}

pub fn matrix_det(f: &Field, m: Mat2) -> FieldElem {
    f.from_code(det(f, m)).expect("code in range")
}

/// Whether two invertible matrices differ by a scalar.
pub fn projectively_equal(f: &Field, x: Mat2, y: Mat2) -> bool {
    pgl_canonical(f, x).is_some() && pgl_canonical(f, x) == pgl_canonical(f, y)
}

/// Order of the class of `m` in PGL₂(q).
pub fn projective_order(f: &Field, m: Mat2) -> Result<u64, MatGroupError> {
    let start = pgl_canonical(f, m).ok_or(MatGroupError::NotInvertible)?;
    let mut x = start;
    let mut k = 1;
    while x != Mat2::IDENTITY {
        x = pgl_canonical(f, mat_mul(f, x, start)).expect("invertible");
        k += 1;
    }
    Ok(k)
}
