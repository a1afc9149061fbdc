//! The identity harness: enumeration against the Euler products, table
//! audits, local splitting relations and class-group counting.

pub mod data;

use std::collections::BTreeMap;
use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::dirichlet::{a_of_k, m2_factor, phi_k, phi_k_charsum, CharsumField, DirichletCoeffs};
use crate::enumerate::{enumerate_f_of_k, FOfK, SearchBudget};
use crate::error::{Error, Result};
use crate::exactmath::integer::{kronecker_prime, primes_up_to, valuation};
use crate::exactmath::{fmt_rational, parse_poly, poly_discriminant, IntPoly, Rational};
use crate::numfield::{
    class_data, disc_decompose, is_isomorphic, make_field, resolvent_cubic_formula, ClassBudget, ClassStatus, NumberField, SplittingType,
};
use crate::parallel::Parallelism;
use crate::resolvent::{
    quartic_from_alpha, relative_splitting, resolvent_cubic, sextic_from_alpha, sextic_from_quartic, AlphaCharPoly,
    QuarticRecord, Relative,
};
use data::TableRow;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    SkippedBudget,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub check: String,
    pub status: Status,
    /// First counterexample, or the reason a check was skipped.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub detail: Option<String>,
    pub runtime_ms: u64,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Outcome of a check body: `Ok(None)` passes, `Ok(Some(w))` fails with w.
type Outcome = Result<(Option<String>, Option<String>)>;

fn run(check: impl Into<String>, body: impl FnOnce() -> Outcome) -> VerificationReport {
    let t = Instant::now();
    let (status, witness, detail) = match body() {
        Ok((None, d)) => (Status::Pass, None, d),
        Ok((Some(w), d)) => (Status::Fail, Some(w), d),
        Err(Error::BudgetExceeded(w)) => (Status::SkippedBudget, Some(w), None),
        Err(e) => (Status::Fail, Some(format!("error: {e}")), None),
    };
    VerificationReport { check: check.into(), status, witness, detail, runtime_ms: t.elapsed().as_millis() as u64 }
}

fn field(s: &str) -> Result<NumberField> {
    make_field(&parse_poly(s)?)
}

fn st(s: &str) -> SplittingType {
    SplittingType::parse(s).expect("table labels parse")
}

/// Both sides of the Φ_k identity on [1, B].
#[derive(Clone, Debug)]
pub struct PhiComparison {
    pub lhs: DirichletCoeffs,
    pub rhs: DirichletCoeffs,
    /// Every quartic with resolvent k and f ≤ max(B, 8), either signature.
    pub fields: FOfK,
    pub l2: Vec<QuarticRecord>,
}

impl PhiComparison {
    pub fn first_mismatch(&self) -> Option<usize> {
        (1..=self.lhs.bound()).find(|&n| self.lhs.get(n) != self.rhs.get(n))
    }
}

/// L₂(k) (or L₂*(k)) picked out of a list containing every quartic with
/// resolvent k and f ≤ 8.
pub fn l2_from(k: &NumberField, records: &[QuarticRecord], star: bool) -> Vec<QuarticRecord> {
    records
        .iter()
        .filter(|r| match r.n2 {
            Some(64) => r.two_tr,
            Some(_) => true,
            None => false,
        })
        .filter(|r| star || !k.is_totally_real() || r.totally_real)
        .cloned()
        .collect()
}

pub fn compare_phi(k: &NumberField, bound: usize, signed: bool, budget: SearchBudget, par: Parallelism) -> Result<PhiComparison> {
    let fields = enumerate_f_of_k(k, bound.max(8) as u64, budget, par)?;
    let l2 = l2_from(k, &fields.records, signed);
    let mut lhs = DirichletCoeffs::zero(bound);
    lhs.set(1, Rational::new(BigInt::one(), BigInt::from(a_of_k(k))));
    let counted = if signed { fields.totally_real() } else { fields.clone() };
    for (&f, &c) in &counted.counts {
        if f as usize <= bound {
            lhs.set(f as usize, lhs.get(f as usize) + Rational::from_integer(BigInt::from(c)));
        }
    }
    let rhs = phi_k(k, &l2, bound, signed)?;
    Ok(PhiComparison { lhs, rhs, fields, l2 })
}

/// Φ_k (or Φ_k⁺) from enumeration against the Euler product, exactly on [1, B].
pub fn verify_phi(k: &NumberField, bound: usize, signed: bool, budget: SearchBudget, par: Parallelism) -> VerificationReport {
    let name = format!("phi{} Disc(k)={} B={bound}", if signed { "+" } else { "" }, k.disc());
    run(name, || {
        let c = compare_phi(k, bound, signed, budget, par)?;
        let detail = format!("|L2{}| = {}, fields with f <= {bound}: {}", if signed { "*" } else { "" }, c.l2.len(), {
            let src = if signed { c.fields.totally_real() } else { c.fields.clone() };
            src.records.iter().filter(|r| r.f <= BigInt::from(bound)).count()
        });
        let w = c.first_mismatch().map(|n| {
            format!("coefficient {n}: enumeration {} vs series {}", fmt_rational(&c.lhs.get(n)), fmt_rational(&c.rhs.get(n)))
        });
        Ok((w, Some(detail)))
    })
}

/// The Euler-product and character-sum forms of Φ_k agree on [1, B].
pub fn verify_charsum(k: &NumberField, l2: &[QuarticRecord], bound: usize, signed: bool) -> VerificationReport {
    run(format!("charsum Disc(k)={} B={bound}{}", k.disc(), if signed { " signed" } else { "" }), || {
        let fields = l2.iter().map(|r| CharsumField::new(r.clone())).collect::<Result<Vec<_>>>()?;
        let a = phi_k(k, l2, bound, signed)?;
        let b = phi_k_charsum(k, &fields, bound, signed)?;
        let w = (1..=bound).find(|&n| a.get(n) != b.get(n)).map(|n| {
            format!("coefficient {n}: euler product {} vs character sum {}", fmt_rational(&a.get(n)), fmt_rational(&b.get(n)))
        });
        Ok((w, None))
    })
}

/// Splitting types of p in L allowed for a given splitting of p in k.
pub fn allowed_l_splits(k_split: &SplittingType, p: u64) -> Vec<SplittingType> {
    let base: &[&str] = match k_split.undecorated().to_string().as_str() {
        "(3)" => &["(31)"],
        "(21)" => &["(4)", "(211)", "(2^2)", "(1^21^2)"],
        "(111)" => &["(1111)", "(22)", "(2^2)", "(1^21^2)"],
        "(1^21)" => &["(21^2)", "(1^211)", "(1^4)"],
        "(1^3)" => &["(1^31)"],
        _ => &[],
    };
    let mut out: Vec<SplittingType> = base.iter().map(|s| st(s)).collect();
    if p == 2 {
        out.push(st("(1^4)"));
        if k_split.undecorated() == st("(1^21)") {
            out.push(st("(1^21^2)"));
            if k_split.decoration() == Some(crate::numfield::Decoration::Four) {
                out.push(st("(2^2)"));
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// First prime p ≤ bound where the pair of splittings is not allowed.
pub fn splitting_violation(k: &NumberField, l: &NumberField, bound: u64) -> Option<String> {
    primes_up_to(bound).into_iter().find_map(|p| {
        let (ks, ls) = (k.splitting_type(p), l.splitting_type(p));
        (!allowed_l_splits(&ks, p).contains(&ls)).then(|| format!("p={p}: {ks} in k, {ls} in L"))
    })
}

fn residue_degrees(s: &SplittingType) -> Vec<u32> {
    s.parts().iter().map(|&(_, f)| f).collect()
}

/// Residue degrees above p: those of L and k together equal {1} plus those of K₆.
pub fn check_artin(k: &NumberField, k6: &NumberField, l: &NumberField, p: u64) -> bool {
    artin_holds(&k.splitting_type(p), &k6.splitting_type(p), &l.splitting_type(p))
}

pub fn artin_holds(k: &SplittingType, k6: &SplittingType, l: &SplittingType) -> bool {
    let mut left = residue_degrees(l);
    left.extend(residue_degrees(k));
    let mut right = vec![1];
    right.extend(residue_degrees(k6));
    left.sort_unstable();
    right.sort_unstable();
    left == right
}

/// 2 is (1⁴) in L exactly when every prime of k above 2 ramifies in K₆.
pub fn check_totally_ramified(k: &NumberField, k6: &NumberField, l: &NumberField) -> bool {
    totally_ramified_holds(&k.splitting_type(2), &k6.splitting_type(2), &l.splitting_type(2))
}

pub fn totally_ramified_holds(k: &SplittingType, k6: &SplittingType, l: &SplittingType) -> bool {
    let all = match relative_splitting(k, k6) {
        Ok(rel) => rel.iter().all(|r| *r == Relative::Ramified),
        Err(_) => return false,
    };
    (*l == st("(1^4)")) == all
}

fn audit_row(i: usize, row: &TableRow) -> Result<Option<String>> {
    let w = |s: String| Ok(Some(format!("row {}: {s}", i + 1)));
    let [kp, pp, lp] = match &row.polys {
        Some(p) => p,
        None => {
            for n2 in [1, 4, 16, 64] {
                if m2_factor(&st(&row.k), &st(&row.l), n2).is_ok() {
                    return w(format!("dashed combination {}|{} has an M2 factor at n2={n2}", row.k, row.l));
                }
            }
            return Ok(None);
        }
    };
    let k = field(kp)?;
    let alpha = AlphaCharPoly::new(parse_poly(pp)?)?;
    let k6 = make_field(&sextic_from_alpha(&alpha)?)?;
    let l = field(lp)?;
    let (ks, k6s, ls) = (k.splitting_type(2), k6.splitting_type(2), l.splitting_type(2));
    if ks != st(&row.k) {
        return w(format!("2 is {ks} in k, table says {}", row.k));
    }
    if k6s != st(&row.k6) {
        return w(format!("2 is {k6s} in K6, table says {}", row.k6));
    }
    if ls != st(&row.l) {
        return w(format!("2 is {ls} in L, table says {}", row.l));
    }
    let (q, r) = l.disc().div_rem(k.disc());
    if !r.is_zero() || Some(q.clone()) != row.n2.map(BigInt::from) {
        return w(format!("Disc(L)/Disc(k) = {}/{}, table says n2 = {:?}", l.disc(), k.disc(), row.n2));
    }
    if !is_isomorphic(&make_field(&resolvent_cubic(l.poly())?)?, &k) {
        return w("resolvent of L is not k".into());
    }
    if !is_isomorphic(&make_field(&quartic_from_alpha(&alpha)?)?, &l) {
        return w("quartic built from alpha is not L".into());
    }
    if !is_isomorphic(&make_field(&sextic_from_quartic(l.poly())?)?, &k6) {
        return w("sextic built from L is not K6".into());
    }
    if m2_factor(&ks, &ls, row.n2.unwrap_or(0)).is_err() {
        return w("no M2 factor for this row".into());
    }
    if !artin_holds(&ks, &k6s, &ls) || !totally_ramified_holds(&ks, &k6s, &ls) {
        return w("local relations fail at 2".into());
    }
    if let Some(v) = splitting_violation(&k, &l, 100) {
        return w(v);
    }
    Ok(None)
}

/// Recomputes every populated row from its polynomials; dashed rows must have
/// no M₂ factor.
pub fn audit_split_tables(rows: &[TableRow]) -> VerificationReport {
    run(format!("split table ({} rows)", rows.len()), || {
        for (i, row) in rows.iter().enumerate() {
            if let Some(w) = audit_row(i, row)? {
                return Ok((Some(w), None));
            }
        }
        Ok((None, None))
    })
}

/// Discriminant and 2-splitting of a cubic or quartic field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscRecord {
    pub degree: usize,
    pub disc: BigInt,
    pub two: SplittingType,
}

impl DiscRecord {
    pub fn of(f: &NumberField) -> Self {
        DiscRecord { degree: f.degree(), disc: f.disc().clone(), two: f.splitting_type(2) }
    }
}

fn quartic_v2_allowed(two: &SplittingType) -> &'static [u32] {
    if two.is_unramified() {
        return &[0];
    }
    match two.undecorated().to_string().as_str() {
        "(1^211)" | "(21^2)" => &[2, 3],
        "(1^21^2)" => &[4, 5, 6],
        "(1^31)" => &[2],
        "(2^2)" => &[4, 6],
        "(1^4)" => &[4, 6, 8, 9, 10, 11],
        _ => &[],
    }
}

fn congruence_violation(r: &DiscRecord) -> Option<String> {
    let d = &r.disc;
    match r.degree {
        3 => {
            let m32 = d.mod_floor(&BigInt::from(32));
            let m16 = d.mod_floor(&BigInt::from(16));
            let total = m32 == BigInt::from(20);
            let partial = m16 == BigInt::from(8) || m16 == BigInt::from(12);
            let ok = total == (r.two.undecorated() == st("(1^3)")) && partial == (r.two.undecorated() == st("(1^21)"));
            (!ok).then(|| format!("cubic Disc {d} with 2 = {}", r.two))
        }
        4 => {
            let v = valuation(d, 2);
            (!quartic_v2_allowed(&r.two).contains(&v)).then(|| format!("quartic Disc {d} (v2 = {v}) with 2 = {}", r.two))
        }
        _ => Some(format!("degree {} record", r.degree)),
    }
}

/// Congruences for Disc(k) at 2 against the splitting of 2 in cubics, and the
/// allowed v₂(Disc L) for each splitting of 2 in quartics.
pub fn check_disc_congruences(records: &[DiscRecord]) -> VerificationReport {
    run(format!("disc congruences ({} fields)", records.len()), || Ok((records.iter().find_map(congruence_violation), None)))
}

/// Conductor exponents v_p(f) ≤ 1 for p ≠ 3 in Disc(k) = D·f².
pub fn check_conductor(k: &NumberField) -> Result<()> {
    disc_decompose(k).map(|_| ())
}

/// Kronecker(Disc, p) = (−1)^{n−g} at a prime unramified in F; `None` if ramified.
pub fn stickelberger(f: &NumberField, p: u64) -> Option<bool> {
    let s = f.splitting_type(p);
    if !s.is_unramified() {
        return None;
    }
    let expected = if (f.degree() - s.num_primes()) % 2 == 0 { 1 } else { -1 };
    Some(kronecker_prime(f.disc(), p) == expected)
}

/// Stickelberger parity at every unramified prime below `bound`.
pub fn check_stickelberger(fields: &[NumberField], bound: u64) -> VerificationReport {
    run(format!("stickelberger parity ({} fields, p < {bound})", fields.len()), || {
        let primes = primes_up_to(bound);
        let w = fields.iter().find_map(|f| {
            primes
                .iter()
                .find(|&&p| stickelberger(f, p) == Some(false))
                .map(|p| format!("{} at p={p}", f.poly()))
        });
        Ok((w, None))
    })
}

/// Polynomial discriminant identities: the resolvent cubic keeps the
/// discriminant of a monic quartic, and the quartic built from α multiplies
/// that of P_α by 2¹².
pub fn check_poly_identities(quartics: &[IntPoly], alphas: &[AlphaCharPoly]) -> VerificationReport {
    run(format!("polynomial identities ({} quartics, {} alphas)", quartics.len(), alphas.len()), || {
        for q in quartics {
            if poly_discriminant(&resolvent_cubic_formula(q))? != poly_discriminant(q)? {
                return Ok((Some(format!("resolvent of {q}")), None));
            }
        }
        for a in alphas {
            let q = match quartic_from_alpha(a) {
                Ok(q) => q,
                Err(Error::InvalidInput(_)) | Err(Error::TrivialNorm(_)) => continue,
                Err(e) => return Ok((Some(e.to_string()), None)),
            };
            if poly_discriminant(&q)? != BigInt::from(4096) * poly_discriminant(&a.0)? {
                return Ok((Some(format!("quartic from {}", a.0)), None));
            }
        }
        Ok((None, None))
    })
}

/// Class-group counts and the sizes of L(k,1), L₂(k), L₂*(k).
#[derive(Clone, Debug, Serialize)]
pub struct Counting {
    pub rk2: usize,
    pub rk2_plus: usize,
    pub a: u32,
    pub l1: usize,
    pub l1_star: usize,
    pub l2: usize,
    pub l2_star: usize,
    /// Sizes of L(k,4), L(k,16), L_tr(k,64) within L₂(k).
    pub families: [usize; 3],
}

fn counting_witness(c: &Counting, signed: bool) -> Option<String> {
    let a = c.a as usize;
    let c1 = 1usize << c.rk2;
    let c4 = a * c.l2 + 1;
    if a * c.l1 + 1 != c1 {
        return Some(format!("a|L(k,1)|+1 = {} but 2^rk2 = {c1}", a * c.l1 + 1));
    }
    if c4 != c1 && c4 != 2 * c1 {
        return Some(format!("|C(4)| = {c4} with |C(1)| = {c1}"));
    }
    if c.families.iter().filter(|&&x| x > 0).count() > 1 {
        return Some(format!("several secondary families nonempty: {:?}", c.families));
    }
    if signed {
        let c1p = 1usize << c.rk2_plus;
        let c4p = a * c.l2_star + 1;
        if a * c.l1_star + 1 != c1p {
            return Some(format!("a|L*(k,1)|+1 = {} but 2^rk2+ = {c1p}", a * c.l1_star + 1));
        }
        if c4p * c4 != 4 * c1p * c1 {
            return Some(format!("|C+(4)||C(4)| = {} but 4|C+(1)||C(1)| = {}", c4p * c4, 4 * c1p * c1));
        }
        if c4 != c1p {
            return Some(format!("|C(4)| = {c4} but |C+(1)| = {c1p}"));
        }
    }
    None
}

pub fn counting_data(
    k: &NumberField,
    class_budget: ClassBudget,
    budget: SearchBudget,
    par: Parallelism,
) -> Result<Counting> {
    let cd = class_data(k, class_budget)?;
    if cd.status != ClassStatus::CertifiedAtDeskScale {
        return Err(Error::BudgetExceeded(format!("class data for Disc {} not certified", k.disc())));
    }
    let all = crate::enumerate::discover_l2(k, true, budget, par)?;
    let l2 = l2_from(k, &all, false);
    let n2 = |v: &[QuarticRecord], n: u32| v.iter().filter(|r| r.n2 == Some(n)).count();
    Ok(Counting {
        rk2: cd.rk2,
        rk2_plus: cd.rk2_plus,
        a: a_of_k(k),
        l1: n2(&l2, 1),
        l1_star: n2(&all, 1),
        l2: l2.len(),
        l2_star: all.len(),
        families: [n2(&l2, 4), n2(&l2, 16), n2(&l2, 64)],
    })
}

/// Counting formulas relating 2-ranks of (narrow) class groups to the number
/// of quartics found; the signed relations are checked when k is totally real.
pub fn check_counting(k: &NumberField, class_budget: ClassBudget, budget: SearchBudget, par: Parallelism) -> VerificationReport {
    run(format!("counting Disc(k)={}", k.disc()), || {
        let c = counting_data(k, class_budget, budget, par)?;
        let detail = serde_json::to_string(&c).ok();
        Ok((counting_witness(&c, k.is_totally_real()), detail))
    })
}

/// For a cyclic cubic with 2 totally split and five unramified quartics:
/// exactly one has 2 = (1111), the rest (22). Returns the index of that one.
pub fn five_fields(k: &NumberField, ls: &[NumberField]) -> Result<std::result::Result<usize, String>> {
    if k.splitting_type(2) != st("(111)") {
        return Ok(Err(format!("2 is {} in k", k.splitting_type(2))));
    }
    if ls.len() != 5 {
        return Ok(Err(format!("{} fields supplied", ls.len())));
    }
    let mut split = Vec::new();
    for (i, l) in ls.iter().enumerate() {
        if l.disc() != k.disc() {
            return Ok(Err(format!("{} has Disc {} != {}", l.poly(), l.disc(), k.disc())));
        }
        if !is_isomorphic(&make_field(&resolvent_cubic(l.poly())?)?, k) {
            return Ok(Err(format!("resolvent of {} is not k", l.poly())));
        }
        match l.splitting_type(2).to_string().as_str() {
            "(1111)" => split.push(i),
            "(22)" => {}
            s => return Ok(Err(format!("2 is {s} in {}", l.poly()))),
        }
    }
    Ok(if split.len() == 1 { Ok(split[0]) } else { Err(format!("{} fields with 2 totally split", split.len())) })
}

pub fn five_fields_check(k: &NumberField, ls: &[NumberField]) -> VerificationReport {
    run("five fields", || {
        Ok(match five_fields(k, ls)? {
            Ok(i) => (None, Some(format!("distinguished: {}", ls[i].poly()))),
            Err(w) => (Some(w), None),
        })
    })
}

/// Splitting of 2 in each field, for reports.
pub fn two_splittings(records: &[QuarticRecord]) -> BTreeMap<String, usize> {
    let mut m = BTreeMap::new();
    for r in records {
        *m.entry(r.l.splitting_type(2).to_string()).or_insert(0) += 1;
    }
    m
}
