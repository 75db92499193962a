//! Generator sets of linear groups over `Q(x_1..x_s)` or `F_p(t, x_1..x_s)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polyarith::expr::{parse_fraction, ZPoly};
use crate::polyarith::prime::{inv_mod, is_prime};
use crate::polyarith::{CoefRing, Integers, MPoly, PrimeField};

/// Coefficient field of the generator entries.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FieldSpec {
    /// `Q(x_1, ..., x_s)`.
    Rational,
    /// `F_p(t, x_1, ..., x_s)`; the first variable is `t`.
    FunctionField { p: u64 },
}

/// On-disk form: entries are fraction strings over `vars`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GeneratorFile {
    pub field: FieldSpec,
    #[serde(default)]
    pub vars: Vec<String>,
    pub generators: Vec<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inverses: Option<Vec<Vec<Vec<String>>>>,
}

pub(crate) type Frac<R> = (MPoly<R>, MPoly<R>);

/// `gamma = P_gamma / g` with a common denominator `g` and integral
/// `P_gamma`; generators first, then their inverses.
#[derive(Clone)]
pub struct Integral<R: CoefRing> {
    pub ring: R,
    pub nvars: usize,
    pub fracs: Vec<Vec<Frac<R>>>,
    pub mats: Vec<Vec<MPoly<R>>>,
    pub g: MPoly<R>,
}

#[derive(Clone)]
pub enum Coeffs {
    Rational(Integral<Integers>),
    FunctionField(Integral<PrimeField>),
}

#[derive(Clone)]
pub struct GeneratorSet {
    pub field: FieldSpec,
    pub vars: Vec<String>,
    pub d: usize,
    pub ngens: usize,
    /// Exponent with `g^m gamma` integral for every generator.
    pub m: u32,
    /// Degree bound on the entries of the `g^m gamma` and on `g`.
    pub n_degree: u32,
    pub coeffs: Coeffs,
    pub file: GeneratorFile,
}

pub(crate) fn mat_mul<R: CoefRing>(r: &R, nv: usize, d: usize, a: &[MPoly<R>], b: &[MPoly<R>]) -> Vec<MPoly<R>> {
    let mut out = vec![MPoly::zero(r, nv); d * d];
    for i in 0..d {
        for k in 0..d {
            if a[i * d + k].is_zero() {
                continue;
            }
            for j in 0..d {
                let t = a[i * d + k].mul(&b[k * d + j]);
                out[i * d + j] = out[i * d + j].add(&t);
            }
        }
    }
    out
}

pub(crate) fn scalar_mat<R: CoefRing>(r: &R, nv: usize, d: usize, c: &MPoly<R>) -> Vec<MPoly<R>> {
    (0..d * d).map(|k| if k / d == k % d { c.clone() } else { MPoly::zero(r, nv) }).collect()
}

fn minor<R: CoefRing>(m: &[MPoly<R>], d: usize, row: usize, col: usize) -> Vec<MPoly<R>> {
    let mut out = Vec::with_capacity((d - 1) * (d - 1));
    for i in 0..d {
        for j in 0..d {
            if i != row && j != col {
                out.push(m[i * d + j].clone());
            }
        }
    }
    out
}

pub(crate) fn det<R: CoefRing>(r: &R, nv: usize, m: &[MPoly<R>], d: usize) -> MPoly<R> {
    if d == 1 {
        return m[0].clone();
    }
    let mut acc = MPoly::zero(r, nv);
    for j in 0..d {
        if m[j].is_zero() {
            continue;
        }
        let t = m[j].mul(&det(r, nv, &minor(m, d, 0, j), d - 1));
        acc = if j % 2 == 0 { acc.add(&t) } else { acc.sub(&t) };
    }
    acc
}

fn adjugate<R: CoefRing>(r: &R, nv: usize, m: &[MPoly<R>], d: usize) -> Vec<MPoly<R>> {
    if d == 1 {
        return vec![MPoly::one(r, nv)];
    }
    let mut out = vec![MPoly::zero(r, nv); d * d];
    for i in 0..d {
        for j in 0..d {
            let c = det(r, nv, &minor(m, d, j, i), d - 1);
            out[i * d + j] = if (i + j) % 2 == 0 { c } else { c.neg() };
        }
    }
    out
}

fn leading<R: CoefRing>(f: &MPoly<R>) -> R::E {
    f.terms().iter().next_back().map(|(_, c)| c.clone()).expect("nonzero")
}

/// Common denominator of one matrix and the integral numerators.
fn integralize<R: CoefRing>(r: &R, nv: usize, fracs: &[&[Frac<R>]]) -> (MPoly<R>, Vec<Vec<MPoly<R>>>) {
    let one = MPoly::one(r, nv);
    let mut factors: Vec<MPoly<R>> = Vec::new();
    for m in fracs {
        for (_, den) in m.iter() {
            if *den != one && !factors.contains(den) {
                factors.push(den.clone());
            }
        }
    }
    let g = factors.iter().fold(one.clone(), |a, f| a.mul(f));
    let mats = fracs
        .iter()
        .map(|m| {
            m.iter()
                .map(|(num, den)| {
                    if *den == one {
                        num.mul(&g)
                    } else {
                        let idx = factors.iter().position(|f| f == den).unwrap();
                        factors.iter().enumerate().filter(|&(j, _)| j != idx).fold(num.clone(), |a, (_, f)| a.mul(f))
                    }
                })
                .collect()
        })
        .collect();
    (g, mats)
}

/// Inverse of `gamma` when `det gamma` is a nonzero constant.
fn invert<R: CoefRing>(r: &R, nv: usize, d: usize, m: &[Frac<R>]) -> Result<Vec<Frac<R>>> {
    let (g, p) = integralize(r, nv, &[m]);
    let p = &p[0];
    let dp = det(r, nv, p, d);
    if dp.is_zero() {
        return Err(Error::InvalidInput("singular generator".into()));
    }
    let gd = g.pow(d as u64);
    let (ld, lg) = (leading(&dp), leading(&gd));
    if dp.scale(&lg) != gd.scale(&ld) {
        return Err(Error::InvalidInput("generator determinant is not constant; list the inverses explicitly".into()));
    }
    if ld == lg {
        let den = g.pow(d as u64 - 1);
        return Ok(adjugate(r, nv, p, d).into_iter().map(|a| (a, den.clone())).collect());
    }
    let den = g.pow(d as u64 - 1).scale(&ld);
    Ok(adjugate(r, nv, p, d).into_iter().map(|a| (a.scale(&lg), den.clone())).collect())
}

fn normalize_fp(p: u64, (num, den): Frac<PrimeField>) -> Result<Frac<PrimeField>> {
    if den.is_zero() {
        return Err(Error::InvalidInput(format!("denominator vanishes mod {p}")));
    }
    if den.is_constant() {
        let c = inv_mod(den.constant_term(), p);
        let nv = den.nvars();
        Ok((num.scale(&c), MPoly::one(&PrimeField(p), nv)))
    } else {
        Ok((num, den))
    }
}

fn build<R: CoefRing>(r: &R, nv: usize, d: usize, gens: Vec<Vec<Frac<R>>>, invs: Option<Vec<Vec<Frac<R>>>>) -> Result<(Integral<R>, u32)> {
    let invs = match invs {
        Some(v) => v,
        None => gens.iter().map(|m| invert(r, nv, d, m)).collect::<Result<_>>()?,
    };
    let mut fracs = gens;
    fracs.extend(invs);
    let refs: Vec<&[Frac<R>]> = fracs.iter().map(|m| m.as_slice()).collect();
    let (g, mats) = integralize(r, nv, &refs);
    let k = fracs.len() / 2;
    let g2 = scalar_mat(r, nv, d, &g.mul(&g));
    for i in 0..k {
        if mat_mul(r, nv, d, &mats[i], &mats[k + i]) != g2 {
            return Err(Error::InvalidInput(format!("inverse of generator {} does not match", i + 1)));
        }
    }
    let n = mats.iter().flatten().map(|e| e.total_degree()).chain([g.total_degree(), 1]).max().unwrap();
    Ok((Integral { ring: r.clone(), nvars: nv, fracs, mats, g }, n))
}

fn parse_mats(ms: &[Vec<Vec<String>>], vars: &[String]) -> Result<(usize, Vec<Vec<(ZPoly, ZPoly)>>)> {
    let d = ms.first().map(|m| m.len()).ok_or_else(|| Error::InvalidInput("no generators".into()))?;
    let mut out = Vec::new();
    for m in ms {
        if m.len() != d || m.iter().any(|row| row.len() != d) {
            return Err(Error::InvalidInput(format!("generators must all be {d}x{d}")));
        }
        let mut entries = Vec::new();
        for s in m.iter().flatten() {
            let (num, den) = parse_fraction(s, vars)?;
            if den.is_zero() {
                return Err(Error::InvalidInput(format!("zero denominator in {s:?}")));
            }
            entries.push((num, den));
        }
        out.push(entries);
    }
    Ok((d, out))
}

impl GeneratorSet {
    pub fn from_file(file: GeneratorFile) -> Result<Self> {
        let vars = file.vars.clone();
        let (d, gens) = parse_mats(&file.generators, &vars)?;
        if d > 6 {
            return Err(Error::Unsupported("matrix size above 6".into()));
        }
        let invs = match &file.inverses {
            Some(ms) => {
                let (di, v) = parse_mats(ms, &vars)?;
                if di != d || v.len() != gens.len() {
                    return Err(Error::InvalidInput("inverses do not match the generators".into()));
                }
                Some(v)
            }
            None => None,
        };
        let nv = vars.len();
        let ngens = gens.len();
        let (coeffs, n_degree) = match file.field {
            FieldSpec::Rational => {
                let (i, n) = build(&Integers, nv, d, gens, invs)?;
                (Coeffs::Rational(i), n)
            }
            FieldSpec::FunctionField { p } => {
                if !is_prime(p) {
                    return Err(Error::InvalidInput(format!("{p} is not prime")));
                }
                if nv == 0 {
                    return Err(Error::InvalidInput("the function-field case needs the variable t".into()));
                }
                let red = |v: Vec<Vec<(ZPoly, ZPoly)>>| -> Result<Vec<Vec<Frac<PrimeField>>>> {
                    v.into_iter()
                        .map(|m| m.into_iter().map(|(a, b)| normalize_fp(p, (a.reduce_mod(p), b.reduce_mod(p)))).collect())
                        .collect()
                };
                let (i, n) = build(&PrimeField(p), nv, d, red(gens)?, invs.map(red).transpose()?)?;
                (Coeffs::FunctionField(i), n)
            }
        };
        Ok(GeneratorSet { field: file.field.clone(), vars, d, ngens, m: 1, n_degree, coeffs, file })
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Self::from_file(serde_json::from_str(s)?)
    }

    /// Number of extra variables `s` (excluding `t`).
    pub fn s(&self) -> usize {
        match self.field {
            FieldSpec::Rational => self.vars.len(),
            FieldSpec::FunctionField { .. } => self.vars.len() - 1,
        }
    }

    /// Matrix index of a word letter: `i > 0` is generator `i`, `-i` its inverse.
    pub fn letter(&self, w: i64) -> Result<usize> {
        let k = w.unsigned_abs() as usize;
        if w == 0 || k > self.ngens {
            return Err(Error::InvalidInput(format!("letter {w} out of range 1..={}", self.ngens)));
        }
        Ok(if w > 0 { k - 1 } else { self.ngens + k - 1 })
    }

    /// Inverse of a letter.
    pub fn inverse_letter(w: i64) -> i64 {
        -w
    }

    /// All letters `1..=k` and `-1..=-k`.
    pub fn letters(&self) -> Vec<i64> {
        let k = self.ngens as i64;
        (1..=k).chain((1..=k).map(|i| -i)).collect()
    }
}

/// `SL2(Z)` generated by `T = [[1,1],[0,1]]` and `S = [[0,-1],[1,0]]`.
pub fn sl2_z_ts() -> GeneratorFile {
    GeneratorFile {
        field: FieldSpec::Rational,
        vars: vec![],
        generators: vec![mat(&[["1", "1"], ["0", "1"]]), mat(&[["0", "-1"], ["1", "0"]])],
        inverses: None,
    }
}

/// `SL2(Z)` generated by the elementary matrices `x_+(1)` and `x_-(1)`.
pub fn sl2_z_elementary() -> GeneratorFile {
    GeneratorFile {
        field: FieldSpec::Rational,
        vars: vec![],
        generators: vec![mat(&[["1", "1"], ["0", "1"]]), mat(&[["1", "0"], ["1", "1"]])],
        inverses: None,
    }
}

/// `SL2(F_p[t])` generated by `x_+(1), x_-(1), x_+(t), x_-(t)`.
pub fn sl2_fpt_elementary(p: u64) -> GeneratorFile {
    GeneratorFile {
        field: FieldSpec::FunctionField { p },
        vars: vec!["t".into()],
        generators: vec![
            mat(&[["1", "1"], ["0", "1"]]),
            mat(&[["1", "0"], ["1", "1"]]),
            mat(&[["1", "t"], ["0", "1"]]),
            mat(&[["1", "0"], ["t", "1"]]),
        ],
        inverses: None,
    }
}

fn mat(rows: &[[&str; 2]]) -> Vec<Vec<String>> {
    rows.iter().map(|r| r.iter().map(|s| s.to_string()).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverses_and_denominators() {
        let g = GeneratorSet::from_file(sl2_z_ts()).unwrap();
        assert_eq!((g.d, g.ngens, g.n_degree), (2, 2, 1));
        let file = GeneratorFile {
            field: FieldSpec::Rational,
            vars: vec!["x".into()],
            generators: vec![vec![vec!["x".into(), "0".into()], vec!["0".into(), "1/x".into()]], mat(&[["1", "1/2"], ["0", "1"]])],
            inverses: None,
        };
        let g = GeneratorSet::from_file(file).unwrap();
        let Coeffs::Rational(i) = &g.coeffs else { panic!() };
        // g = x * 2
        assert_eq!(i.g.total_degree(), 1);
        assert_eq!(i.mats.len(), 4);
        let bad = GeneratorFile {
            field: FieldSpec::Rational,
            vars: vec!["x".into()],
            generators: vec![vec![vec!["x".into(), "0".into()], vec!["0".into(), "1".into()]]],
            inverses: None,
        };
        assert!(GeneratorSet::from_file(bad).is_err());
        let g = GeneratorSet::from_file(sl2_fpt_elementary(2)).unwrap();
        assert_eq!((g.ngens, g.n_degree, g.s()), (4, 1, 0));
        assert_eq!(g.letter(-4).unwrap(), 7);
        assert!(g.letter(5).is_err() && g.letter(0).is_err());
    }

    #[test]
    fn json_round_trip() {
        let s = serde_json::to_string(&sl2_fpt_elementary(3)).unwrap();
        assert!(s.contains("function_field"));
        let g = GeneratorSet::from_json(&s).unwrap();
        assert_eq!(g.field, FieldSpec::FunctionField { p: 3 });
        assert!(GeneratorSet::from_json(r#"{"field":{"kind":"rational"},"generators":[[["1","x"],["0","1"]]]}"#).is_err());
    }
}
