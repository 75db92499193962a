//! Word evaluation, invariant selection and the two detection searches.

use num_bigint::BigUint;
use num_traits::{One, Pow};
use serde::{Deserialize, Serialize};

use super::gens::{mat_mul, scalar_mat, Coeffs, GeneratorSet, Integral};
use crate::error::{Error, Result};
use crate::polyarith::prime::next_prime;
use crate::polyarith::{find_detecting_field, CoefRing, FiniteField, Integers, MPoly, MultiPoly, Poly, PrimeField};

/// `B = (g^m)^n A` for the word `A`, with degree and height audits.
#[derive(Clone)]
pub struct Evaluated<R: CoefRing> {
    pub b: Vec<MPoly<R>>,
    pub n: usize,
    /// `g^n`.
    pub gn: MPoly<R>,
    pub max_degree: u32,
}

pub(crate) fn evaluate<R: CoefRing>(set: &GeneratorSet, c: &Integral<R>, word: &[i64]) -> Result<Evaluated<R>> {
    if word.is_empty() {
        return Err(Error::InvalidInput("empty word".into()));
    }
    let d = set.d;
    let mut b = c.mats[set.letter(word[0])?].clone();
    for &w in &word[1..] {
        b = mat_mul(&c.ring, c.nvars, d, &b, &c.mats[set.letter(w)?]);
    }
    let max_degree = b.iter().map(|e| e.total_degree()).max().unwrap_or(0);
    Ok(Evaluated { b, n: word.len(), gn: c.g.pow(word.len() as u64), max_degree })
}

/// Degree (char p) or coefficient-size (char 0) audit of a word.
#[derive(Clone, Debug, Serialize)]
pub struct WordAudit {
    pub n: usize,
    pub max_degree: u32,
    /// `n N`.
    pub degree_bound: u64,
    /// Bits of the largest coefficient (rational case).
    pub max_height_bits: u64,
}

pub fn evaluate_word(set: &GeneratorSet, word: &[i64]) -> Result<WordAudit> {
    let bound = word.len() as u64 * set.n_degree as u64;
    Ok(match &set.coeffs {
        Coeffs::Rational(c) => {
            let e = evaluate(set, c, word)?;
            let bits = e.b.iter().map(|x| x.max_abs_coeff().bits()).max().unwrap_or(0);
            WordAudit { n: e.n, max_degree: e.max_degree, degree_bound: bound, max_height_bits: bits }
        }
        Coeffs::FunctionField(c) => {
            let e = evaluate(set, c, word)?;
            WordAudit { n: e.n, max_degree: e.max_degree, degree_bound: bound, max_height_bits: 0 }
        }
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum InvariantKind {
    OffDiagonal { i: usize, j: usize },
    DiagonalDifference { i: usize, j: usize },
    /// `g^{mnd}(a^d - 1)` for `A = aI`.
    ScalarDeterminant,
}

/// The invariant `f` with `f != 0`, in the integral normalisation.
pub(crate) fn select<R: CoefRing>(c: &Integral<R>, d: usize, e: &Evaluated<R>) -> Result<(InvariantKind, MPoly<R>)> {
    let b = &e.b;
    if *b == scalar_mat(&c.ring, c.nvars, d, &e.gn) {
        return Err(Error::NotDetectable("the word is the identity".into()));
    }
    for i in 0..d {
        for j in 0..d {
            if i != j && !b[i * d + j].is_zero() {
                return Ok((InvariantKind::OffDiagonal { i, j }, b[i * d + j].clone()));
            }
        }
    }
    for i in 0..d {
        for j in i + 1..d {
            let f = b[i * d + i].sub(&b[j * d + j]);
            if !f.is_zero() {
                return Ok((InvariantKind::DiagonalDifference { i, j }, f));
            }
        }
    }
    let f = b[0].pow(d as u64).sub(&e.gn.pow(d as u64));
    if f.is_zero() {
        return Err(Error::TorsionScalar);
    }
    Ok((InvariantKind::ScalarDeterminant, f))
}

/// Selected invariant for a word, as a formatted polynomial.
pub fn select_invariant(set: &GeneratorSet, word: &[i64]) -> Result<(InvariantKind, String)> {
    let names: Vec<&str> = set.vars.iter().map(String::as_str).collect();
    match &set.coeffs {
        Coeffs::Rational(c) => {
            let (k, f) = select(c, set.d, &evaluate(set, c, word)?)?;
            Ok((k, f.format(&names)))
        }
        Coeffs::FunctionField(c) => {
            let (k, f) = select(c, set.d, &evaluate(set, c, word)?)?;
            Ok((k, f.format(&names)))
        }
    }
}

/// Where the word is sent.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Target {
    /// `Z[x] -> F_p`, `x_i -> point[i]`.
    Prime { p: u64, point: Vec<u64> },
    /// `F_p[t, x] -> F = F_p[t]/(modulus)`, `t -> t_image`, `x_i -> x_images[i]`
    /// (field element codes).
    Field { p: u64, modulus: Vec<u64>, t_image: u64, x_images: Vec<u64> },
}

impl Target {
    pub fn field(&self) -> Result<FiniteField> {
        match self {
            Target::Prime { p, .. } => FiniteField::prime(*p),
            Target::Field { p, modulus, .. } => FiniteField::new(Poly::new(*p, modulus.clone())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Invariant {
    #[serde(flatten)]
    pub kind: InvariantKind,
    pub poly: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DetectionCertificate {
    pub word: Vec<i64>,
    pub invariant: Invariant,
    pub target: Target,
    pub field_size: u64,
    /// Image of the word, entries formatted in the target field.
    pub image: Vec<Vec<String>>,
    pub image_scalar: bool,
    /// Every generator lands in `SL_d`.
    pub det_one: bool,
    /// `|SL_d(F)|` when `det_one`, else `|GL_d(F)|`.
    pub quotient_order_bound: String,
    /// `4 q d N n` (function field) or the prime itself (rational).
    pub size_bound: u64,
}

pub(crate) fn gl_order(q: u64, d: usize, sl: bool) -> BigUint {
    let qb = BigUint::from(q);
    let qd = Pow::pow(&qb, d as u32);
    let mut o = BigUint::one();
    for i in 0..d {
        o *= &qd - Pow::pow(&qb, i as u32);
    }
    if sl {
        o /= q - 1;
    }
    o
}

/// Images of all generator matrices (and inverses) at a point of `F`.
pub(crate) fn images_in_field<R: CoefRing>(
    c: &Integral<R>,
    field: &FiniteField,
    lift: impl Fn(&R::E) -> u64,
    point: &[u64],
) -> Result<Vec<Vec<u64>>> {
    let ev = |f: &MPoly<R>| f.map_coeffs(field, &lift).eval(point);
    c.fracs
        .iter()
        .map(|m| {
            m.iter()
                .map(|(num, den)| {
                    let dv = ev(den);
                    field.div(ev(num), dv).ok_or_else(|| Error::NotDetectable("denominator vanishes at the target".into()))
                })
                .collect()
        })
        .collect()
}

pub(crate) fn field_mat_mul(f: &FiniteField, d: usize, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut out = vec![0; d * d];
    for i in 0..d {
        for k in 0..d {
            let x = a[i * d + k];
            if x == 0 {
                continue;
            }
            for j in 0..d {
                out[i * d + j] = f.add(out[i * d + j], f.mul(x, b[k * d + j]));
            }
        }
    }
    out
}

pub(crate) fn field_det(f: &FiniteField, d: usize, a: &[u64]) -> u64 {
    let mut m = a.to_vec();
    let mut det = 1;
    for c in 0..d {
        let Some(piv) = (c..d).find(|&i| m[i * d + c] != 0) else { return 0 };
        if piv != c {
            for j in 0..d {
                m.swap(piv * d + j, c * d + j);
            }
            det = f.neg(det);
        }
        let pv = m[c * d + c];
        det = f.mul(det, pv);
        let inv = f.inv(pv).unwrap();
        for i in c + 1..d {
            let r = f.mul(m[i * d + c], inv);
            if r != 0 {
                for j in c..d {
                    m[i * d + j] = f.sub(m[i * d + j], f.mul(r, m[c * d + j]));
                }
            }
        }
    }
    det
}

/// Image of the word under the target map, plus `det_one`.
pub fn image_at(set: &GeneratorSet, word: &[i64], target: &Target) -> Result<(FiniteField, Vec<u64>, bool)> {
    let field = target.field()?;
    let imgs = match (&set.coeffs, target) {
        (Coeffs::Rational(c), Target::Prime { p, point }) => {
            if point.len() != set.s() {
                return Err(Error::MalformedCertificate("point has the wrong length".into()));
            }
            let pb = num_bigint::BigInt::from(*p);
            let lift = |x: &num_bigint::BigInt| {
                let r = ((x % &pb) + &pb) % &pb;
                r.iter_u64_digits().next().unwrap_or(0)
            };
            images_in_field(c, &field, lift, point)?
        }
        (Coeffs::FunctionField(c), Target::Field { p, t_image, x_images, .. }) => {
            if *p != c.ring.0 || x_images.len() != set.s() {
                return Err(Error::MalformedCertificate("target does not match the generator set".into()));
            }
            let mut pt = vec![*t_image];
            pt.extend(x_images);
            images_in_field(c, &field, |x| *x, &pt)?
        }
        _ => return Err(Error::MalformedCertificate("target kind does not match the coefficient field".into())),
    };
    let d = set.d;
    let det_one = imgs[..set.ngens].iter().all(|m| field_det(&field, d, m) == 1);
    let mut acc: Option<Vec<u64>> = None;
    for &w in word {
        let m = &imgs[set.letter(w)?];
        acc = Some(match acc {
            None => m.clone(),
            Some(a) => field_mat_mul(&field, d, &a, m),
        });
    }
    let acc = acc.ok_or_else(|| Error::InvalidInput("empty word".into()))?;
    Ok((field, acc, det_one))
}

pub(crate) fn is_identity(d: usize, m: &[u64]) -> bool {
    m.iter().enumerate().all(|(k, &x)| x == (k / d == k % d) as u64)
}

pub(crate) fn is_scalar(d: usize, m: &[u64]) -> bool {
    m.iter().enumerate().all(|(k, &x)| if k / d == k % d { x == m[0] } else { x == 0 })
}

fn certificate(set: &GeneratorSet, word: &[i64], inv: Invariant, target: Target, size_bound: u64) -> Result<DetectionCertificate> {
    let (field, img, det_one) = image_at(set, word, &target)?;
    let d = set.d;
    if is_identity(d, &img) {
        return Err(Error::TheoremViolation(format!("image of {word:?} is trivial at {target:?}")));
    }
    let q = field.order();
    Ok(DetectionCertificate {
        word: word.to_vec(),
        invariant: inv,
        field_size: q,
        image: img.chunks(d).map(|r| r.iter().map(|&x| field.format(x)).collect()).collect(),
        image_scalar: is_scalar(d, &img),
        det_one,
        quotient_order_bound: gl_order(q, d, det_one).to_string(),
        size_bound,
        target,
    })
}

/// Function-field pipeline: a field of size at most `4 q d N n` in which the
/// word survives.
pub fn detect_function_field(set: &GeneratorSet, word: &[i64]) -> Result<DetectionCertificate> {
    let Coeffs::FunctionField(c) = &set.coeffs else {
        return Err(Error::InvalidInput("generator set is not over a function field".into()));
    };
    let p = c.ring.0;
    let e = evaluate(set, c, word)?;
    let (kind, f) = select(c, set.d, &e)?;
    let names: Vec<&str> = set.vars.iter().map(String::as_str).collect();
    let inv = Invariant { kind, poly: f.format(&names) };
    let h = f.mul(&c.g);
    let s = set.s();
    let xs: Vec<usize> = (1..=s).collect();
    let h0: MultiPoly = h.split_by(&xs).into_values().next().expect("nonzero h");
    let h0 = h0.as_t_poly().expect("t-only coefficient");
    let n = word.len() as u64;
    let nbound = 2 * n * set.d as u64 * set.n_degree as u64;
    let df = find_detecting_field(&h0, nbound)?;
    let field = df.field;
    let mut cur: MPoly<FiniteField> = h.map_coeffs(&field, |&a| a);
    cur = cur.substitute(0, &MPoly::constant(&field, h.nvars(), df.t_image));
    let mut x_images = Vec::with_capacity(s);
    for v in 1..=s {
        let hit = field
            .elements()
            .map(|a| (a, cur.substitute(v, &MPoly::constant(&field, h.nvars(), a))))
            .find(|(_, sub)| !sub.is_zero());
        let (a, sub) = hit.ok_or_else(|| Error::NotFound(format!("no value for x_{v}")))?;
        x_images.push(a);
        cur = sub;
    }
    let target = Target::Field { p, modulus: field.modulus().coeffs().to_vec(), t_image: df.t_image, x_images };
    let cert = certificate(set, word, inv, target, 4 * p * nbound / 2)?;
    Ok(cert)
}

/// Largest prime tried by [`detect_rational`].
pub const PRIME_LIMIT: u64 = 1 << 20;

/// Rational pipeline: the first prime `p` (ascending) and point of `F_p^s`
/// (lexicographic) at which `f g` does not vanish.
pub fn detect_rational(set: &GeneratorSet, word: &[i64]) -> Result<DetectionCertificate> {
    let Coeffs::Rational(c) = &set.coeffs else {
        return Err(Error::InvalidInput("generator set is not over Q".into()));
    };
    let e = evaluate(set, c, word)?;
    let (kind, f) = select(c, set.d, &e)?;
    let names: Vec<&str> = set.vars.iter().map(String::as_str).collect();
    let inv = Invariant { kind, poly: f.format(&names) };
    let h: MPoly<Integers> = f.mul(&c.g);
    let s = set.s();
    let mut p = 2;
    while p <= PRIME_LIMIT {
        let hp = h.reduce_mod(p);
        if !hp.is_zero() {
            if let Some(point) = first_nonzero_point(&hp, p, s) {
                return certificate(set, word, inv, Target::Prime { p, point }, p);
            }
        }
        p = next_prime(p);
    }
    Err(Error::NotFound(format!("no prime below {PRIME_LIMIT}")))
}

fn first_nonzero_point(h: &MPoly<PrimeField>, p: u64, s: usize) -> Option<Vec<u64>> {
    let total = (p as u128).checked_pow(s as u32)?;
    let limit = total.min(1 << 22) as u64;
    let mut pt = vec![0u64; s];
    for idx in 0..limit {
        let mut r = idx;
        for v in (0..s).rev() {
            pt[v] = r % p;
            r /= p;
        }
        if h.eval(&pt) != 0 {
            return Some(pt);
        }
    }
    None
}

/// Dispatch on the coefficient field.
pub fn detect(set: &GeneratorSet, word: &[i64]) -> Result<DetectionCertificate> {
    match set.coeffs {
        Coeffs::Rational(_) => detect_rational(set, word),
        Coeffs::FunctionField(_) => detect_function_field(set, word),
    }
}

/// Detect every word, in input order.
pub fn detect_all(set: &GeneratorSet, words: &[Vec<i64>]) -> Vec<Result<DetectionCertificate>> {
    crate::par::map(words, |w| detect(set, w))
}

/// Independent replay of a certificate.
///
/// Returns `Err(MalformedCertificate)` for certificates that cannot be
/// checked at all, `Ok(false)` for a failed check.
pub fn verify_certificate(set: &GeneratorSet, cert: &DetectionCertificate) -> Result<bool> {
    if cert.word.is_empty() {
        return Err(Error::MalformedCertificate("empty word".into()));
    }
    for &w in &cert.word {
        set.letter(w).map_err(|e| Error::MalformedCertificate(e.to_string()))?;
    }
    if cert.image.len() != set.d || cert.image.iter().any(|r| r.len() != set.d) {
        return Err(Error::MalformedCertificate("image has the wrong shape".into()));
    }
    // the identity word has no certificate
    let trivial = match &set.coeffs {
        Coeffs::Rational(c) => {
            let e = evaluate(set, c, &cert.word)?;
            e.b == scalar_mat(&c.ring, c.nvars, set.d, &e.gn)
        }
        Coeffs::FunctionField(c) => {
            let e = evaluate(set, c, &cert.word)?;
            e.b == scalar_mat(&c.ring, c.nvars, set.d, &e.gn)
        }
    };
    if trivial {
        return Err(Error::MalformedCertificate("the word is the identity".into()));
    }
    let (field, img, det_one) = match image_at(set, &cert.word, &cert.target) {
        Ok(x) => x,
        Err(Error::MalformedCertificate(m)) => return Err(Error::MalformedCertificate(m)),
        Err(Error::InvalidInput(m)) => return Err(Error::MalformedCertificate(m)),
        Err(_) => return Ok(false),
    };
    let d = set.d;
    let shown: Vec<Vec<String>> = img.chunks(d).map(|r| r.iter().map(|&x| field.format(x)).collect()).collect();
    Ok(!is_identity(d, &img)
        && shown == cert.image
        && field.order() == cert.field_size
        && is_scalar(d, &img) == cert.image_scalar
        && det_one == cert.det_one
        && (matches!(cert.target, Target::Prime { .. }) || cert.field_size <= cert.size_bound))
}

#[cfg(test)]
mod tests {
    use super::super::gens::{sl2_fpt_elementary, sl2_z_elementary, sl2_z_ts, FieldSpec, GeneratorFile};
    use super::*;

    #[test]
    fn rational_examples() {
        let g = GeneratorSet::from_file(sl2_z_ts()).unwrap();
        let c = detect_rational(&g, &[1, 1]).unwrap();
        assert_eq!(c.target, Target::Prime { p: 3, point: vec![] });
        assert_eq!(c.invariant.kind, InvariantKind::OffDiagonal { i: 0, j: 1 });
        assert_eq!(c.quotient_order_bound, "24");
        assert!(verify_certificate(&g, &c).unwrap());
        // T^8: 8 vanishes mod 2 only
        let c = detect_rational(&g, &[1; 8]).unwrap();
        assert_eq!(c.target, Target::Prime { p: 3, point: vec![] });
        // S^2 = -I is a torsion scalar
        assert!(matches!(detect_rational(&g, &[2, 2]), Err(Error::TorsionScalar)));
        assert!(matches!(detect_rational(&g, &[1, -1]), Err(Error::NotDetectable(_))));
        // S^2 T ... diagonal path: x_+(1) x_-(1) gives [[2,1],[1,1]]
        let e = GeneratorSet::from_file(sl2_z_elementary()).unwrap();
        let c = detect_rational(&e, &[1, 2]).unwrap();
        assert_eq!(c.target, Target::Prime { p: 2, point: vec![] });
    }

    #[test]
    fn tampering_fails() {
        let g = GeneratorSet::from_file(sl2_z_ts()).unwrap();
        let mut c = detect_rational(&g, &[1, 1]).unwrap();
        c.target = Target::Prime { p: 2, point: vec![] };
        assert!(!verify_certificate(&g, &c).unwrap());
        let mut c = detect_rational(&g, &[1, 1]).unwrap();
        c.word = vec![1, -1];
        assert!(matches!(verify_certificate(&g, &c), Err(Error::MalformedCertificate(_))));
        c.word = vec![];
        assert!(matches!(verify_certificate(&g, &c), Err(Error::MalformedCertificate(_))));
    }

    #[test]
    fn scalar_word() {
        let file = GeneratorFile {
            field: FieldSpec::Rational,
            vars: vec![],
            generators: vec![vec![vec!["2".into(), "0".into()], vec!["0".into(), "2".into()]]],
            inverses: None,
        };
        let g = GeneratorSet::from_file(file).unwrap();
        let c = detect_rational(&g, &[1]).unwrap();
        assert_eq!(c.invariant.kind, InvariantKind::ScalarDeterminant);
        assert!(c.image_scalar && !c.det_one);
        // g = 4, f = 8^2 - 4^2 and f g = 192
        assert_eq!(c.target, Target::Prime { p: 5, point: vec![] });
        assert!(verify_certificate(&g, &c).unwrap());
    }

    #[test]
    fn rational_with_variable() {
        let file = GeneratorFile {
            field: FieldSpec::Rational,
            vars: vec!["x".into()],
            generators: vec![vec![vec!["1".into(), "x^2-x".into()], vec!["0".into(), "1".into()]]],
            inverses: None,
        };
        let g = GeneratorSet::from_file(file).unwrap();
        let c = detect_rational(&g, &[1]).unwrap();
        // a^2 - a vanishes on F_2 entirely; at p = 3 the first non-root is 2
        assert_eq!(c.target, Target::Prime { p: 3, point: vec![2] });
        assert!(verify_certificate(&g, &c).unwrap());
    }

    #[test]
    fn function_field_examples() {
        let g = GeneratorSet::from_file(sl2_fpt_elementary(2)).unwrap();
        let word = [3, 3, 3];
        let c = detect_function_field(&g, &word).unwrap();
        assert!(c.field_size <= 4 * 2 * 2 * 3);
        assert!(c.field_size > 2 * 2 * 2 * 3);
        assert!(verify_certificate(&g, &c).unwrap());
        let a = evaluate_word(&g, &[1, 3, 2, 4, 1, 3, 2, 4]).unwrap();
        assert!(a.max_degree as u64 <= a.degree_bound);
        let mut bad = c.clone();
        if let Target::Field { t_image, .. } = &mut bad.target {
            *t_image = 0;
        }
        assert!(!verify_certificate(&g, &bad).unwrap());
    }

    #[test]
    fn function_field_with_variable() {
        let file = GeneratorFile {
            field: FieldSpec::FunctionField { p: 2 },
            vars: vec!["t".into(), "x".into()],
            generators: vec![vec![vec!["1".into(), "x*t+x^2".into()], vec!["0".into(), "1".into()]]],
            inverses: None,
        };
        let g = GeneratorSet::from_file(file).unwrap();
        let c = detect_function_field(&g, &[1, 1, 1]).unwrap();
        assert!(verify_certificate(&g, &c).unwrap());
        assert!(c.field_size <= c.size_bound);
    }
}
