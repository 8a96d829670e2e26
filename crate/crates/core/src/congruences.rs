//! Registry of the congruences and identities the workbench verifies.
//!
//! Each entry evaluates both sides at a given prime with the best available
//! method and returns structured evidence. Congruences on rational sides
//! always mean v_p(lhs - rhs) >= k; residue equality is used when both
//! sides are plain residues.
//!
//! Three evaluation routes exist:
//! - `direct`: quotient sums and power sums, no Bernoulli table. Bernoulli
//!   values enter through the exact Faulhaber expansion of
//!   S_n(p) = sum_{a<p} a^n, which pins B_n modulo p^(2 - v_p(n+1)).
//! - `exact-bernoulli`: the shared exact table (primes up to the
//!   configured cutoff).
//! - `padic-estimate`: Bernoulli data recovered from the same quotient
//!   sums via the Wilson-quotient evaluation; flagged
//!   "derived-from-same-data" because it is an algebraic consistency
//!   check, not independent verification.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use crate::bernoulli::{
    bernoulli_padic_estimate, w_quantity, BernoulliPadicEstimate, BernoulliTable,
};
use crate::error::{Error, Result};
use crate::numcore::{
    self, mod_inv, mod_pow, rat_congruent, rat_residue, PadicLaurent, PrimePowerModulus, Residue,
};
use crate::quotients::{
    self, fermat_quotient_sum_exact, harmonic_prefix, lucas_lehmer_rational, QuotientBundle,
    WeightedSums,
};

/// Registry identifiers. C03g is the general-index form of C03 and takes
/// the index multiple `m` from the request.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CongruenceId {
    C01,
    C02,
    C03,
    C03g,
    C04,
    C05,
    C06,
    C07,
    C08,
    C09,
    C10,
    C11,
    C12,
    C13,
    C14,
    C15,
    C16,
    C17,
    C18,
    C19,
    C20,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CongruenceKind {
    Congruence,
    ExactIdentity,
}

impl CongruenceId {
    /// Every registry entry, in report order.
    pub const ALL: [CongruenceId; 21] = [
        CongruenceId::C01,
        CongruenceId::C02,
        CongruenceId::C03,
        CongruenceId::C03g,
        CongruenceId::C04,
        CongruenceId::C05,
        CongruenceId::C06,
        CongruenceId::C07,
        CongruenceId::C08,
        CongruenceId::C09,
        CongruenceId::C10,
        CongruenceId::C11,
        CongruenceId::C12,
        CongruenceId::C13,
        CongruenceId::C14,
        CongruenceId::C15,
        CongruenceId::C16,
        CongruenceId::C17,
        CongruenceId::C18,
        CongruenceId::C19,
        CongruenceId::C20,
    ];

    /// Entries run by `check_all`; C03g is excluded because it needs an
    /// explicit index multiple.
    pub fn standard() -> impl Iterator<Item = CongruenceId> {
        Self::ALL
            .iter()
            .copied()
            .filter(|id| *id != CongruenceId::C03g)
    }

    pub fn code(self) -> &'static str {
        match self {
            CongruenceId::C01 => "C01",
            CongruenceId::C02 => "C02",
            CongruenceId::C03 => "C03",
            CongruenceId::C03g => "C03g",
            CongruenceId::C04 => "C04",
            CongruenceId::C05 => "C05",
            CongruenceId::C06 => "C06",
            CongruenceId::C07 => "C07",
            CongruenceId::C08 => "C08",
            CongruenceId::C09 => "C09",
            CongruenceId::C10 => "C10",
            CongruenceId::C11 => "C11",
            CongruenceId::C12 => "C12",
            CongruenceId::C13 => "C13",
            CongruenceId::C14 => "C14",
            CongruenceId::C15 => "C15",
            CongruenceId::C16 => "C16",
            CongruenceId::C17 => "C17",
            CongruenceId::C18 => "C18",
            CongruenceId::C19 => "C19",
            CongruenceId::C20 => "C20",
        }
    }

    pub fn kind(self) -> CongruenceKind {
        match self {
            CongruenceId::C10 | CongruenceId::C11 => CongruenceKind::ExactIdentity,
            _ => CongruenceKind::Congruence,
        }
    }

    /// Exponent k of the registry modulus p^k; None for the exact
    /// identities (C11 still reports residue evidence modulo p^3).
    pub fn modulus_exponent(self) -> Option<u8> {
        match self {
            CongruenceId::C10 | CongruenceId::C11 => None,
            CongruenceId::C07
            | CongruenceId::C08
            | CongruenceId::C09
            | CongruenceId::C15
            | CongruenceId::C16
            | CongruenceId::C17
            | CongruenceId::C20 => Some(2),
            CongruenceId::C13 | CongruenceId::C14 => Some(3),
            _ => Some(1),
        }
    }

    /// Smallest prime the entry applies to.
    pub fn min_p(self) -> u64 {
        match self {
            CongruenceId::C08 | CongruenceId::C10 | CongruenceId::C17 | CongruenceId::C19 => 5,
            _ => 3,
        }
    }

    pub fn summary(self) -> &'static str {
        match self {
            CongruenceId::C01 => "W_p = B_{p-1} - 1 + 1/p (mod p) [Glaisher]",
            CongruenceId::C02 => "B_{p-1} - 1 + 1/p = 0 (mod p) [Wilson prime criterion]",
            CongruenceId::C03 => "Kummer-Johnson congruence at index multiple 2 (mod p)",
            CongruenceId::C03g => "Kummer-Johnson congruence at a general index multiple (mod p)",
            CongruenceId::C04 => "W_p = B_{2p-2} - B_{p-1} (mod p) [Lehmer]",
            CongruenceId::C05 => "B_{2p-2} = B_{p-1} (mod p) [Wilson prime, Bernoulli form]",
            CongruenceId::C06 => "sum q_p(a) = W_p (mod p) [Lerch]",
            CongruenceId::C07 => "sum q_p(a) = W_p (mod p^2) [Lerch prime definition]",
            CongruenceId::C08 => "sum q_p(a) = B_{p-1} - 1 + 1/p (mod p^2) [Carlitz]",
            CongruenceId::C09 => "W_p = B_{p-1} - 1 + 1/p (mod p^2) [second Lerch criterion]",
            CongruenceId::C10 => "Euler-MacLaurin closed form of sum q_p(a) [exact]",
            CongruenceId::C11 => "W_p = sum (-1)^a C(p-1,a) q_p(a) [Beeger, exact]",
            CongruenceId::C12 => "C(p-1,a) = (-1)^a (mod p) for all a [Lucas]",
            CongruenceId::C13 => "C(p-1,a) with harmonic corrections (mod p^3) for all a [Lehmer]",
            CongruenceId::C14 => "W_p = harmonic-weighted quotient sums (mod p^3)",
            CongruenceId::C15 => "C(p-1,a) = (-1)^a (1 - p H_a) (mod p^2) for all a",
            CongruenceId::C16 => "W_p = sum q - p sum H q (mod p^2)",
            CongruenceId::C17 => "Wilson quotient in Bernoulli terms (mod p^2) [Sun]",
            CongruenceId::C18 => "sum H_a q_p(a) = 0 (mod p) [third Lerch criterion]",
            CongruenceId::C19 => {
                "W_p = B_{2p-2}/(2p) - B_{p-1}^2/(2p-2) (mod p) [fourth Lerch criterion]"
            }
            CongruenceId::C20 => "B_{2p-2} = B_{p-1} (mod p^2) [Wilson-Lerch condition]",
        }
    }
}

impl std::fmt::Display for CongruenceId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.code())
    }
}

/// Evaluation route for one check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Direct,
    ExactBernoulli,
    PadicEstimate,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Direct => "direct",
            Method::ExactBernoulli => "exact-bernoulli",
            Method::PadicEstimate => "padic-estimate",
        }
    }
}

/// Requested evaluation route.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum MethodChoice {
    #[default]
    Auto,
    Direct,
    ExactBernoulli,
    PadicEstimate,
}

/// One registry check at one prime.
#[derive(Clone, Debug)]
pub struct CheckRequest {
    pub id: CongruenceId,
    pub p: u64,
    /// Index multiple for C03g; ignored elsewhere.
    pub m: Option<u64>,
    pub method: MethodChoice,
}

impl CheckRequest {
    pub fn auto(id: CongruenceId, p: u64) -> Self {
        Self {
            id,
            p,
            m: None,
            method: MethodChoice::Auto,
        }
    }
}

/// Reported side of a check.
#[derive(Clone, Debug)]
pub enum Evidence {
    Residue(Residue),
    Rational(BigRational),
    Padic(PadicLaurent),
}

impl std::fmt::Display for Evidence {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Evidence::Residue(r) => write!(f, "{r}"),
            Evidence::Rational(x) => write!(f, "{}/{}", x.numer(), x.denom()),
            Evidence::Padic(x) => write!(f, "{x}"),
        }
    }
}

/// Structured outcome of one registry check.
#[derive(Clone, Debug)]
pub struct CongruenceResult {
    pub id: CongruenceId,
    pub p: u64,
    pub applicable: bool,
    /// Defined only when applicable and a method was available.
    pub holds: Option<bool>,
    pub lhs: Option<Evidence>,
    pub rhs: Option<Evidence>,
    /// The registry modulus p^k; None for exact identities.
    pub modulus: Option<BigUint>,
    pub method: Option<Method>,
    pub note: Option<String>,
}

/// Flat, serializable view of a result (stable field order).
#[derive(Clone, Debug, Serialize)]
pub struct ReportRow {
    pub id: &'static str,
    pub p: u64,
    pub applicable: bool,
    pub holds: Option<bool>,
    pub lhs: Option<String>,
    pub rhs: Option<String>,
    pub modulus: Option<String>,
    pub method: Option<&'static str>,
    pub note: Option<String>,
}

impl CongruenceResult {
    fn not_applicable(id: CongruenceId, p: u64) -> Self {
        Self {
            id,
            p,
            applicable: false,
            holds: None,
            lhs: None,
            rhs: None,
            modulus: None,
            method: None,
            note: Some(format!("requires p >= {}", id.min_p())),
        }
    }

    pub fn to_row(&self) -> ReportRow {
        ReportRow {
            id: self.id.code(),
            p: self.p,
            applicable: self.applicable,
            holds: self.holds,
            lhs: self.lhs.as_ref().map(|e| e.to_string()),
            rhs: self.rhs.as_ref().map(|e| e.to_string()),
            modulus: self.modulus.as_ref().map(|m| m.to_string()),
            method: self.method.map(Method::name),
            note: self.note.clone(),
        }
    }
}

/// Verdicts of the four Lerch-prime criteria at one prime. For p = 3 only
/// the original and harmonic-sum criteria are compared; the Bernoulli-based
/// pair is reported as None.
#[derive(Clone, Copy, Debug)]
pub struct CriteriaAgreement {
    pub p: u64,
    pub c07: bool,
    pub c09: Option<bool>,
    pub c18: bool,
    pub c19: Option<bool>,
    pub agree: bool,
}

/// The three-step progression: the Kummer-Johnson congruence holds for
/// every odd prime, its Bernoulli-form specialization exactly for Wilson
/// primes, and the mod-p^2 strengthening for Wilson-Lerch candidates.
#[derive(Clone, Copy, Debug)]
pub struct StringencyProgression {
    pub p: u64,
    pub c03: bool,
    pub c05: bool,
    pub c20: bool,
    /// c05 implies c03 and c20 implies c05 on the reported verdicts.
    pub consistent: bool,
}

/// Shared read-only state for registry checks: the exact Bernoulli table
/// and the cutoff below which the exact route is used.
#[derive(Debug)]
pub struct CheckContext {
    table: BernoulliTable,
    p_exact: u64,
}

impl CheckContext {
    /// Build a context whose exact table covers B_0..B_{2 p_exact - 2}.
    pub fn new(p_exact: u64) -> Self {
        let p_exact = p_exact.max(3);
        Self {
            table: BernoulliTable::new((2 * p_exact - 2) as usize),
            p_exact,
        }
    }

    pub fn p_exact(&self) -> u64 {
        self.p_exact
    }

    pub fn table(&self) -> &BernoulliTable {
        &self.table
    }

    fn exact_available(&self, p: u64, max_index: u64) -> bool {
        p <= self.p_exact && max_index as usize <= self.table.max_index()
    }

    /// Run one registry check.
    pub fn check(&self, req: &CheckRequest) -> Result<CongruenceResult> {
        let mut cache = Cache::new(self, req.p)?;
        self.check_cached(req, &mut cache)
    }

    fn check_cached(&self, req: &CheckRequest, cache: &mut Cache) -> Result<CongruenceResult> {
        let id = req.id;
        let p = req.p;
        if p < id.min_p() {
            return Ok(CongruenceResult::not_applicable(id, p));
        }
        let m = match id {
            CongruenceId::C03 => Some(2),
            CongruenceId::C03g => Some(req.m.ok_or_else(|| {
                Error::InvalidInput("C03g needs an index multiple m >= 1".into())
            })?),
            _ => None,
        };
        if let Some(m) = m {
            if m < 1 {
                return Err(Error::InvalidInput("index multiple m must be >= 1".into()));
            }
        }
        // Auto walks the supported routes in order and settles on the
        // first one whose precision actually decides the verdict (the
        // power-sum route can run out of digits at awkward indices, e.g.
        // when p^2 divides the index plus one).
        let methods: Vec<Method> = match req.method {
            MethodChoice::Auto => self.supported_methods(id, p, m),
            _ => vec![self.resolve_method(id, p, m, req.method)?],
        };
        let mut last_unavailable = None;
        for method in methods {
            let out = match self.eval(id, p, m, method, cache) {
                Ok(out) => out,
                Err(e @ Error::MethodUnavailable { .. }) => {
                    last_unavailable = Some(e);
                    continue;
                }
                Err(e) => return Err(e),
            };
            let modulus = match id {
                CongruenceId::C10 => None,
                // C11 is exact; residue evidence is shown modulo p^3.
                CongruenceId::C11 => Some(cache.prime_power(3)),
                _ => id.modulus_exponent().map(|k| cache.prime_power(k)),
            };
            return Ok(CongruenceResult {
                id,
                p,
                applicable: true,
                holds: Some(out.holds),
                lhs: Some(out.lhs),
                rhs: Some(out.rhs),
                modulus,
                method: Some(method),
                note: out.note,
            });
        }
        Err(last_unavailable.unwrap_or(Error::MethodUnavailable {
            id: id.code(),
            p,
            method: "auto",
            reason: format!(
                "no independent route at this prime; exact cutoff is p_exact = {}",
                self.p_exact
            ),
        }))
    }

    /// Methods an entry supports at this prime, in auto-resolution order:
    /// direct when available, exact-bernoulli below the cutoff,
    /// padic-estimate above it.
    fn supported_methods(&self, id: CongruenceId, p: u64, m: Option<u64>) -> Vec<Method> {
        use CongruenceId::*;
        use Method::*;
        let bernoulli_index = match id {
            C01 | C02 | C08 | C09 | C10 => p - 1,
            C03 | C03g => m.unwrap_or(2).saturating_mul(p - 1),
            C04 | C05 | C17 | C19 | C20 => 2 * p - 2,
            _ => 0,
        };
        let exact = self.exact_available(p, bernoulli_index);
        match id {
            C06 | C07 | C11 | C12 | C13 | C14 | C15 | C16 | C18 => vec![Direct],
            C01 | C02 | C03 | C03g | C04 | C05 => {
                if exact {
                    vec![Direct, ExactBernoulli]
                } else {
                    vec![Direct]
                }
            }
            C08 | C09 | C10 | C17 => {
                if exact {
                    vec![ExactBernoulli]
                } else {
                    // The only other route rearranges the very sums these
                    // entries constrain, which would make the check a
                    // tautology; refuse instead.
                    vec![]
                }
            }
            C19 | C20 => {
                if exact {
                    vec![ExactBernoulli, PadicEstimate]
                } else {
                    vec![PadicEstimate]
                }
            }
        }
    }

    fn resolve_method(
        &self,
        id: CongruenceId,
        p: u64,
        m: Option<u64>,
        choice: MethodChoice,
    ) -> Result<Method> {
        let supported = self.supported_methods(id, p, m);
        let unavailable = |method: &'static str, reason: String| Error::MethodUnavailable {
            id: id.code(),
            p,
            method,
            reason,
        };
        let pick = |want: Method, label: &'static str, reason: String| {
            supported
                .contains(&want)
                .then_some(want)
                .ok_or_else(|| unavailable(label, reason))
        };
        match choice {
            MethodChoice::Auto => supported.first().copied().ok_or_else(|| {
                unavailable(
                    "auto",
                    format!(
                        "no independent route at this prime; exact cutoff is p_exact = {}",
                        self.p_exact
                    ),
                )
            }),
            MethodChoice::Direct => pick(
                Method::Direct,
                "direct",
                "entry has no direct route".into(),
            ),
            MethodChoice::ExactBernoulli => pick(
                Method::ExactBernoulli,
                "exact-bernoulli",
                format!(
                    "needs the exact table up to the required index (cutoff p_exact = {})",
                    self.p_exact
                ),
            ),
            MethodChoice::PadicEstimate => pick(
                Method::PadicEstimate,
                "padic-estimate",
                "entry has no estimate route".into(),
            ),
        }
    }

    /// Run the listed entries at p with shared subcomputations, resolving
    /// methods automatically.
    pub fn check_ids(&self, p: u64, ids: &[CongruenceId]) -> Result<Vec<CongruenceResult>> {
        let mut cache = Cache::new(self, p)?;
        ids.iter()
            .map(|&id| self.check_cached(&CheckRequest::auto(id, p), &mut cache))
            .collect()
    }

    /// Run every standard registry entry at p with shared subcomputations.
    /// Per-entry method failures are embedded in the results.
    pub fn check_all(&self, p: u64) -> Result<Vec<CongruenceResult>> {
        let mut cache = Cache::new(self, p)?;
        let mut out = Vec::new();
        for id in CongruenceId::standard() {
            let req = CheckRequest::auto(id, p);
            match self.check_cached(&req, &mut cache) {
                Ok(res) => out.push(res),
                Err(Error::MethodUnavailable { reason, .. }) => out.push(CongruenceResult {
                    id,
                    p,
                    applicable: true,
                    holds: None,
                    lhs: None,
                    rhs: None,
                    modulus: id.modulus_exponent().map(|k| cache.prime_power(k)),
                    method: None,
                    note: Some(format!("method unavailable: {reason}")),
                }),
                Err(e) => return Err(e),
            }
        }
        Ok(out)
    }

    /// Evaluate the four Lerch-prime criteria and report whether all
    /// defined verdicts coincide. The two Bernoulli-based criteria use the
    /// exact route and error when it is out of range.
    pub fn lerch_criteria_agree(&self, p: u64) -> Result<CriteriaAgreement> {
        let mut cache = Cache::new(self, p)?;
        let mut holds = |id, method| -> Result<bool> {
            let req = CheckRequest {
                id,
                p,
                m: None,
                method,
            };
            let res = self.check_cached(&req, &mut cache)?;
            Ok(res.holds.unwrap_or(false))
        };
        let c07 = holds(CongruenceId::C07, MethodChoice::Auto)?;
        let c18 = holds(CongruenceId::C18, MethodChoice::Auto)?;
        if p == 3 {
            return Ok(CriteriaAgreement {
                p,
                c07,
                c09: None,
                c18,
                c19: None,
                agree: c07 == c18,
            });
        }
        let c09 = holds(CongruenceId::C09, MethodChoice::ExactBernoulli)?;
        let c19 = holds(CongruenceId::C19, MethodChoice::ExactBernoulli)?;
        Ok(CriteriaAgreement {
            p,
            c07,
            c09: Some(c09),
            c18,
            c19: Some(c19),
            agree: c07 == c09 && c09 == c18 && c18 == c19,
        })
    }

    /// Verdicts of the increasing-stringency chain C03 -> C05 -> C20.
    pub fn stringency_progression(&self, p: u64) -> Result<StringencyProgression> {
        let mut cache = Cache::new(self, p)?;
        let mut verdict = |id| -> Result<bool> {
            let res = self.check_cached(&CheckRequest::auto(id, p), &mut cache)?;
            Ok(res.holds.unwrap_or(false))
        };
        let c03 = verdict(CongruenceId::C03)?;
        let c05 = verdict(CongruenceId::C05)?;
        let c20 = verdict(CongruenceId::C20)?;
        Ok(StringencyProgression {
            p,
            c03,
            c05,
            c20,
            consistent: (!c05 || c03) && (!c20 || c05),
        })
    }

    fn eval(
        &self,
        id: CongruenceId,
        _p: u64,
        m: Option<u64>,
        method: Method,
        cache: &mut Cache,
    ) -> Result<Outcome> {
        use CongruenceId::*;
        match id {
            C01 => self.eval_c01(cache, method),
            C02 => self.eval_c02(cache, method),
            C03 | C03g => self.eval_c03(cache, method, m.expect("index multiple resolved")),
            C04 => self.eval_c04(cache, method),
            C05 => self.eval_c05(cache, method),
            C06 => {
                let lhs = cache.qsum(1)?;
                let rhs = cache.wilson(1)?;
                Ok(Outcome::residues(lhs, rhs))
            }
            C07 => {
                let lhs = cache.qsum(2)?;
                let rhs = cache.wilson(2)?;
                Ok(Outcome::residues(lhs, rhs))
            }
            C08 => {
                let lhs = cache.qsum(2)?;
                let rhs = cache.w_exact_residue(2)?;
                Ok(Outcome::residues(lhs, rhs))
            }
            C09 => {
                let lhs = cache.wilson(2)?;
                let rhs = cache.w_exact_residue(2)?;
                Ok(Outcome::residues(lhs, rhs))
            }
            C10 => self.eval_c10(cache),
            C11 => {
                let lhs = cache.wilson(3)?;
                let rhs = quotients::beeger_sum(cache.p, 3)?;
                let mut out = Outcome::residues(lhs, rhs);
                out.note = Some("exact identity; residues shown mod p^3".into());
                Ok(out)
            }
            C12 => self.eval_binomial_family(cache, 1, BinomialRhs::Lucas),
            C13 => self.eval_binomial_family(cache, 3, BinomialRhs::Lehmer),
            C14 => self.eval_c14(cache),
            C15 => self.eval_binomial_family(cache, 2, BinomialRhs::Weakened),
            C16 => self.eval_c16(cache),
            C17 => self.eval_c17(cache),
            C18 => {
                let lhs = cache.sums()?.harmonic.reduce_to(1)?;
                let rhs = cache.modulus(1)?.zero();
                Ok(Outcome::residues(lhs, rhs))
            }
            C19 => self.eval_c19(cache, method),
            C20 => self.eval_c20(cache, method),
        }
    }

    fn eval_c01(&self, cache: &mut Cache, method: Method) -> Result<Outcome> {
        let lhs = cache.wilson(1)?;
        let rhs = match method {
            Method::ExactBernoulli => {
                let w = self.w_rational(cache.p)?;
                rat_residue(&w, &cache.modulus(1)?)?
            }
            _ => cache.w_power_sum_residue(1)?,
        };
        Ok(Outcome::residues(lhs, rhs))
    }

    fn eval_c02(&self, cache: &mut Cache, method: Method) -> Result<Outcome> {
        let lhs = match method {
            Method::ExactBernoulli => {
                let w = self.w_rational(cache.p)?;
                rat_residue(&w, &cache.modulus(1)?)?
            }
            _ => cache.w_power_sum_residue(1)?,
        };
        let rhs = cache.modulus(1)?.zero();
        Ok(Outcome::residues(lhs, rhs))
    }

    fn eval_c03(&self, cache: &mut Cache, method: Method, m: u64) -> Result<Outcome> {
        let p = cache.p;
        let n = m
            .checked_mul(p - 1)
            .ok_or_else(|| Error::InvalidInput("index multiple overflows".into()))?;
        match method {
            Method::ExactBernoulli => {
                let lhs = (self.table.get(n as usize)? - BigRational::one()
                    + rational(1, p as i64))
                    / BigRational::from(BigInt::from(n));
                let rhs = self.w_rational(p)? / rational(p as i64 - 1, 1);
                let holds = rat_congruent(&lhs, &rhs, &BigUint::from(p), 1);
                Ok(Outcome {
                    holds,
                    lhs: Evidence::Rational(lhs),
                    rhs: Evidence::Rational(rhs),
                    note: None,
                })
            }
            _ => {
                let lhs = cache
                    .w_numerator_power_sum(n)?
                    .div(&cache.exact_padic(&BigRational::from(BigInt::from(n)))?)?;
                let rhs = cache
                    .w_numerator_power_sum(p - 1)?
                    .div(&cache.exact_padic(&rational(p as i64 - 1, 1))?)?;
                let holds = decide(lhs.congruent(&rhs, 1), "C03")?;
                Ok(Outcome {
                    holds,
                    lhs: Evidence::Padic(lhs),
                    rhs: Evidence::Padic(rhs),
                    note: None,
                })
            }
        }
    }

    fn eval_c04(&self, cache: &mut Cache, method: Method) -> Result<Outcome> {
        let p = cache.p;
        let lhs = cache.wilson(1)?;
        let rhs = match method {
            Method::ExactBernoulli => {
                let diff =
                    self.table.get((2 * p - 2) as usize)? - self.table.get((p - 1) as usize)?;
                rat_residue(&diff, &cache.modulus(1)?)?
            }
            _ => {
                let diff = cache
                    .bernoulli_power_sum(2 * p - 2)?
                    .sub(&cache.bernoulli_power_sum(p - 1)?);
                reduce_or_unavailable(&diff, &cache.modulus(1)?, "C04")?
            }
        };
        Ok(Outcome::residues(lhs, rhs))
    }

    fn eval_c05(&self, cache: &mut Cache, method: Method) -> Result<Outcome> {
        let p = cache.p;
        match method {
            Method::ExactBernoulli => {
                let b2 = self.table.get((2 * p - 2) as usize)?.clone();
                let b1 = self.table.get((p - 1) as usize)?.clone();
                let holds = rat_congruent(&b2, &b1, &BigUint::from(p), 1);
                Ok(Outcome {
                    holds,
                    lhs: Evidence::Rational(b2),
                    rhs: Evidence::Rational(b1),
                    note: None,
                })
            }
            _ => {
                let b2 = cache.bernoulli_power_sum(2 * p - 2)?;
                let b1 = cache.bernoulli_power_sum(p - 1)?;
                let holds = decide(b2.congruent(&b1, 1), "C05")?;
                Ok(Outcome {
                    holds,
                    lhs: Evidence::Padic(b2),
                    rhs: Evidence::Padic(b1),
                    note: None,
                })
            }
        }
    }

    fn eval_c10(&self, cache: &mut Cache) -> Result<Outcome> {
        let lhs = BigRational::from(fermat_quotient_sum_exact(cache.p)?);
        let rhs = quotients::euler_maclaurin_rhs(cache.p, &self.table)?;
        Ok(Outcome {
            holds: lhs == rhs,
            lhs: Evidence::Rational(lhs),
            rhs: Evidence::Rational(rhs),
            note: Some("exact identity over the rationals".into()),
        })
    }

    fn eval_c14(&self, cache: &mut Cache) -> Result<Outcome> {
        let m3 = cache.modulus(3)?;
        let sums = cache.sums()?.clone();
        let p_res = m3.residue_u64(cache.p);
        let half_p2 = p_res.mul(&p_res).mul(&mod_inv(&BigInt::from(2), &m3)?);
        let rhs = sums
            .unit
            .sub(&p_res.mul(&sums.harmonic))
            .add(&half_p2.mul(&sums.harmonic_squared))
            .sub(&half_p2.mul(&sums.second_harmonic));
        let lhs = cache.wilson(3)?;
        Ok(Outcome::residues(lhs, rhs))
    }

    fn eval_c16(&self, cache: &mut Cache) -> Result<Outcome> {
        let m2 = cache.modulus(2)?;
        let sums = cache.sums()?.clone();
        let p_res = m2.residue_u64(cache.p);
        let rhs = sums
            .unit
            .reduce_to(2)?
            .sub(&p_res.mul(&sums.harmonic.reduce_to(2)?));
        let lhs = cache.wilson(2)?;
        Ok(Outcome::residues(lhs, rhs))
    }

    fn eval_c17(&self, cache: &mut Cache) -> Result<Outcome> {
        let p = cache.p;
        let lhs = cache.wilson(2)?;
        let b1 = self.table.get((p - 1) as usize)?;
        let b2 = self.table.get((2 * p - 2) as usize)?;
        let a = b1 / rational(p as i64 - 1, 1);
        let combo = rational(1, p as i64) - &a + b2 / rational(2 * p as i64 - 2, 1)
            - rational(p as i64, 2) * &a * &a;
        match rat_residue(&combo, &cache.modulus(2)?) {
            Ok(rhs) => Ok(Outcome::residues(lhs, rhs)),
            Err(Error::NegativeValuation { .. }) => Ok(Outcome {
                holds: false,
                lhs: Evidence::Residue(lhs),
                rhs: Evidence::Rational(combo),
                note: Some("right side is not p-integral".into()),
            }),
            Err(e) => Err(e),
        }
    }

    fn eval_c19(&self, cache: &mut Cache, method: Method) -> Result<Outcome> {
        let p = cache.p;
        let lhs = cache.wilson(1)?;
        match method {
            Method::PadicEstimate => {
                let b_ratio = cache.estimate()?.b_ratio.clone();
                let b1 = cache.b1_estimate()?;
                // B_{2p-2}/(2p) = b_ratio * (p-1)/p
                let term1 = b_ratio.mul(&cache.exact_padic(&rational(p as i64 - 1, p as i64))?);
                let term2 = b1
                    .mul(&b1)
                    .div(&cache.exact_padic(&rational(2 * p as i64 - 2, 1))?)?;
                let rhs = term1.sub(&term2);
                let wilson_pl = PadicLaurent::from_residue(&cache.wilson(2)?);
                let holds = decide(wilson_pl.sub(&rhs).vanishes_mod(1), "C19")?;
                Ok(Outcome {
                    holds,
                    lhs: Evidence::Residue(lhs),
                    rhs: Evidence::Padic(rhs),
                    note: Some(
                        "derived-from-same-data: estimate rearranges the same quotient sums"
                            .into(),
                    ),
                })
            }
            _ => {
                let b1 = self.table.get((p - 1) as usize)?;
                let b2 = self.table.get((2 * p - 2) as usize)?;
                let combo =
                    b2 / rational(2 * p as i64, 1) - b1 * b1 / rational(2 * p as i64 - 2, 1);
                match rat_residue(&combo, &cache.modulus(1)?) {
                    Ok(rhs) => Ok(Outcome::residues(lhs, rhs)),
                    Err(Error::NegativeValuation { .. }) => Ok(Outcome {
                        holds: false,
                        lhs: Evidence::Residue(lhs),
                        rhs: Evidence::Rational(combo),
                        note: Some("right side is not p-integral".into()),
                    }),
                    Err(e) => Err(e),
                }
            }
        }
    }

    fn eval_c20(&self, cache: &mut Cache, method: Method) -> Result<Outcome> {
        let p = cache.p;
        match method {
            Method::PadicEstimate => {
                let b2 = cache
                    .estimate()?
                    .b_ratio
                    .clone()
                    .mul(&cache.exact_padic(&rational(2 * p as i64 - 2, 1))?);
                let b1 = cache.b1_estimate()?;
                let holds = decide(b2.congruent(&b1, 2), "C20")?;
                Ok(Outcome {
                    holds,
                    lhs: Evidence::Padic(b2),
                    rhs: Evidence::Padic(b1),
                    note: Some(
                        "derived-from-same-data: estimate rearranges the same quotient sums"
                            .into(),
                    ),
                })
            }
            _ => {
                let b2 = self.table.get((2 * p - 2) as usize)?.clone();
                let b1 = self.table.get((p - 1) as usize)?.clone();
                let holds = rat_congruent(&b2, &b1, &BigUint::from(p), 2);
                Ok(Outcome {
                    holds,
                    lhs: Evidence::Rational(b2),
                    rhs: Evidence::Rational(b1),
                    note: None,
                })
            }
        }
    }

    /// Per-a binomial families (Lucas and its refinements). Scans all a in
    /// 0..=p-1 and reports the first counterexample, or the witness at
    /// a = p-1 when every index passes.
    fn eval_binomial_family(
        &self,
        cache: &mut Cache,
        k: u8,
        rhs_kind: BinomialRhs,
    ) -> Result<Outcome> {
        let p = cache.p;
        let m = cache.modulus(k)?;
        let h1 = match rhs_kind {
            BinomialRhs::Lucas => Vec::new(),
            _ => harmonic_prefix(p - 1, 1),
        };
        let h2 = match rhs_kind {
            BinomialRhs::Lehmer => harmonic_prefix(p - 1, 2),
            _ => Vec::new(),
        };
        let mut binom = m.one();
        let mut last: Option<(u64, Residue, Residue)> = None;
        for a in 0..p {
            if a > 0 {
                binom = binom.mul(&m.residue_u64(p - a));
                binom = binom.mul(&mod_inv(&BigInt::from(a), &m)?);
            }
            let expected = match rhs_kind {
                BinomialRhs::Lucas => m.one(),
                BinomialRhs::Weakened => {
                    let bracket =
                        BigRational::one() - rational(p as i64, 1) * &h1[a as usize];
                    rat_residue(&bracket, &m)?
                }
                BinomialRhs::Lehmer => {
                    let bracket = lucas_lehmer_rational(&h1[a as usize], &h2[a as usize], p);
                    rat_residue(&bracket, &m)?
                }
            };
            let expected = if a % 2 == 1 { expected.neg() } else { expected };
            if binom != expected {
                return Ok(Outcome {
                    holds: false,
                    lhs: Evidence::Residue(binom),
                    rhs: Evidence::Residue(expected),
                    note: Some(format!("fails at a = {a}")),
                });
            }
            last = Some((a, binom.clone(), expected));
        }
        let (a, lhs, rhs) = last.expect("p >= 3 gives at least one index");
        Ok(Outcome {
            holds: true,
            lhs: Evidence::Residue(lhs),
            rhs: Evidence::Residue(rhs),
            note: Some(format!(
                "verified for all a in 0..={}; witness a = {a}",
                p - 1
            )),
        })
    }

    fn w_rational(&self, p: u64) -> Result<BigRational> {
        w_quantity(p, &self.table)
    }
}

enum BinomialRhs {
    Lucas,
    Weakened,
    Lehmer,
}

struct Outcome {
    holds: bool,
    lhs: Evidence,
    rhs: Evidence,
    note: Option<String>,
}

impl Outcome {
    fn residues(lhs: Residue, rhs: Residue) -> Self {
        Self {
            holds: lhs == rhs,
            lhs: Evidence::Residue(lhs),
            rhs: Evidence::Residue(rhs),
            note: None,
        }
    }
}

/// Convert a precision shortfall into a method error; genuine verdicts
/// pass through.
fn decide(r: Result<bool>, id: &'static str) -> Result<bool> {
    match r {
        Ok(v) => Ok(v),
        Err(Error::InsufficientPrecision { known, need }) => Err(Error::MethodUnavailable {
            id,
            p: 0,
            method: "direct",
            reason: format!("estimate known mod p^{known}, verdict needs p^{need}"),
        }),
        Err(e) => Err(e),
    }
}

fn reduce_or_unavailable(
    x: &PadicLaurent,
    m: &PrimePowerModulus,
    id: &'static str,
) -> Result<Residue> {
    match x.reduce(m) {
        Ok(r) => Ok(r),
        Err(Error::InsufficientPrecision { known, need }) => Err(Error::MethodUnavailable {
            id,
            p: 0,
            method: "direct",
            reason: format!("estimate known mod p^{known}, reduction needs p^{need}"),
        }),
        Err(e) => Err(e),
    }
}

fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Per-prime lazily computed shared state for one check or check_all run.
struct Cache<'a> {
    ctx: &'a CheckContext,
    p: u64,
    pb: BigUint,
    bundle: Option<QuotientBundle>,
    sums3: Option<WeightedSums>,
    estimate: Option<BernoulliPadicEstimate>,
    psum_cache: Vec<(u64, PadicLaurent)>,
}

impl<'a> Cache<'a> {
    fn new(ctx: &'a CheckContext, p: u64) -> Result<Self> {
        if p < 3 || p % 2 == 0 || !numcore::is_prime_u64(p) {
            return Err(Error::NotOddPrime(p));
        }
        Ok(Self {
            ctx,
            p,
            pb: BigUint::from(p),
            bundle: None,
            sums3: None,
            estimate: None,
            psum_cache: Vec::new(),
        })
    }

    fn modulus(&self, k: u8) -> Result<PrimePowerModulus> {
        PrimePowerModulus::from_u64(self.p, k)
    }

    fn prime_power(&self, k: u8) -> BigUint {
        self.pb.pow(k as u32)
    }

    fn bundle(&mut self) -> Result<&QuotientBundle> {
        if self.bundle.is_none() {
            self.bundle = Some(QuotientBundle::compute(self.p, 3)?);
        }
        Ok(self.bundle.as_ref().expect("just filled"))
    }

    fn qsum(&mut self, k: u8) -> Result<Residue> {
        self.bundle()?.qsum.reduce_to(k)
    }

    fn wilson(&mut self, k: u8) -> Result<Residue> {
        self.bundle()?.wilson.reduce_to(k)
    }

    fn sums(&mut self) -> Result<&WeightedSums> {
        if self.sums3.is_none() {
            self.sums3 = Some(quotients::all_weighted_sums(self.p, 3)?);
        }
        Ok(self.sums3.as_ref().expect("just filled"))
    }

    fn estimate(&mut self) -> Result<&BernoulliPadicEstimate> {
        if self.estimate.is_none() {
            let qsum = self.qsum(2)?;
            let wilson = self.wilson(2)?;
            self.estimate = Some(bernoulli_padic_estimate(self.p, &wilson, &qsum)?);
        }
        Ok(self.estimate.as_ref().expect("just filled"))
    }

    /// B_{p-1} recovered from the quotient-sum estimate, known mod p^2.
    fn b1_estimate(&mut self) -> Result<PadicLaurent> {
        let w = PadicLaurent::from_residue(&self.estimate()?.w_mod_p2.clone());
        let tail = self.exact_padic(&rational(self.p as i64 - 1, self.p as i64))?;
        Ok(w.add(&tail))
    }

    fn exact_padic(&self, x: &BigRational) -> Result<PadicLaurent> {
        PadicLaurent::from_rational(x, &self.pb, 6)
    }

    fn w_exact_residue(&mut self, k: u8) -> Result<Residue> {
        let w = self.ctx.w_rational(self.p)?;
        rat_residue(&w, &self.modulus(k)?)
    }

    /// B_{p-1} - 1 + 1/p from the power-sum route, as a residue mod p^k.
    fn w_power_sum_residue(&mut self, k: u8) -> Result<Residue> {
        let w = self.w_numerator_power_sum(self.p - 1)?;
        reduce_or_unavailable(&w, &self.modulus(k)?, "C01/C02")
    }

    /// B_n - 1 + 1/p as a tracked p-adic value via the power-sum route.
    fn w_numerator_power_sum(&mut self, n: u64) -> Result<PadicLaurent> {
        let b = self.bernoulli_power_sum(n)?;
        let tail = self.exact_padic(&rational(-(self.p as i64 - 1), self.p as i64))?;
        Ok(b.add(&tail))
    }

    /// Estimate B_n from the exact power-sum expansion: for even n >= 4,
    /// B_n = S_n(p)/p + O(p^(2 - v_p(n+1))) with S_n(p) = sum_{a<p} a^n.
    /// At p = 3 every even Bernoulli number carries a 3-pole, which costs
    /// one level: the error there is O(3^(1 - v_3(n+1))). Indices below 4
    /// are universal constants and come back exact.
    fn bernoulli_power_sum(&mut self, n: u64) -> Result<PadicLaurent> {
        if n <= 3 {
            let b = match n {
                0 => BigRational::one(),
                1 => rational(-1, 2),
                2 => rational(1, 6),
                _ => rational(0, 1),
            };
            return self.exact_padic(&b);
        }
        if let Some((_, cached)) = self.psum_cache.iter().find(|(idx, _)| *idx == n) {
            return Ok(cached.clone());
        }
        debug_assert!(n % 2 == 0);
        let m3 = self.modulus(3)?;
        let s = power_sum_mod(self.p, n, &m3);
        let mut vp_n1 = 0i64;
        let mut t = n + 1;
        while t % self.p == 0 {
            vp_n1 += 1;
            t /= self.p;
        }
        let bound = if self.p == 3 { 1 - vp_n1 } else { 2 - vp_n1 };
        let est = BigRational::new(BigInt::from(s.value().clone()), BigInt::from(self.p));
        let pl = PadicLaurent::from_rational(&est, &self.pb, 6)?.truncate_known(bound);
        self.psum_cache.push((n, pl.clone()));
        Ok(pl)
    }
}

/// S_n(p) = sum_{a=1}^{p-1} a^n reduced at the given modulus.
fn power_sum_mod(p: u64, n: u64, m: &PrimePowerModulus) -> Residue {
    if let Some(pk) = m.modulus_u64() {
        let mut acc = 0u64;
        for a in 1..p {
            acc += numcore::kernel::pow_mod(a % pk, n, pk);
            if acc >= pk {
                acc -= pk;
            }
        }
        return m.residue_u64(acc);
    }
    let nb = BigUint::from(n);
    let mut acc = m.zero();
    for a in 1..p {
        acc = acc.add(&mod_pow(&BigInt::from(a), &nb, m));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numcore::is_prime_u64;

    fn primes(lo: u64, hi: u64) -> Vec<u64> {
        (lo..=hi)
            .filter(|&n| n % 2 == 1 && is_prime_u64(n))
            .collect()
    }

    fn ctx() -> CheckContext {
        CheckContext::new(499)
    }

    fn verdict(ctx: &CheckContext, id: CongruenceId, p: u64) -> bool {
        ctx.check(&CheckRequest::auto(id, p))
            .unwrap()
            .holds
            .expect("applicable")
    }

    #[test]
    fn registry_metadata_is_total() {
        assert_eq!(CongruenceId::ALL.len(), 21);
        assert_eq!(CongruenceId::standard().count(), 20);
        for id in CongruenceId::ALL {
            assert!(!id.summary().is_empty());
            assert!(id.min_p() == 3 || id.min_p() == 5);
        }
        assert_eq!(CongruenceId::C10.kind(), CongruenceKind::ExactIdentity);
        assert_eq!(CongruenceId::C11.kind(), CongruenceKind::ExactIdentity);
        assert_eq!(CongruenceId::C07.modulus_exponent(), Some(2));
    }

    #[test]
    fn registry_point_checks() {
        let ctx = ctx();
        assert!(verdict(&ctx, CongruenceId::C06, 5));
        assert!(verdict(&ctx, CongruenceId::C07, 103)); // Lerch prime
        assert!(!verdict(&ctx, CongruenceId::C02, 7)); // W_7 = 5 mod 7
        assert!(verdict(&ctx, CongruenceId::C20, 5)); // B_8 = B_4 exactly
        let res = ctx
            .check(&CheckRequest {
                id: CongruenceId::C03,
                p: 5,
                m: None,
                method: MethodChoice::ExactBernoulli,
            })
            .unwrap();
        assert_eq!(res.holds, Some(true));
        assert_eq!(res.lhs.unwrap().to_string(), "-5/48");
        assert_eq!(res.rhs.unwrap().to_string(), "-5/24");
    }

    #[test]
    fn check_all_examples() {
        let ctx = ctx();
        let by_id = |v: &[CongruenceResult], id: CongruenceId| {
            v.iter().find(|r| r.id == id).unwrap().clone()
        };
        let at3 = ctx.check_all(3).unwrap();
        for id in [
            CongruenceId::C08,
            CongruenceId::C10,
            CongruenceId::C17,
            CongruenceId::C19,
        ] {
            assert!(!by_id(&at3, id).applicable, "{id} at p=3");
        }
        assert_eq!(by_id(&at3, CongruenceId::C07).holds, Some(true));

        let at13 = ctx.check_all(13).unwrap();
        assert_eq!(by_id(&at13, CongruenceId::C02).holds, Some(true)); // Wilson prime
        assert_eq!(by_id(&at13, CongruenceId::C07).holds, Some(false));

        let at5 = ctx.check_all(5).unwrap();
        let c01 = by_id(&at5, CongruenceId::C01);
        assert_eq!(c01.holds, Some(true));
        assert_eq!(c01.lhs.unwrap().to_string(), "0");
        assert_eq!(c01.rhs.unwrap().to_string(), "0");
    }

    #[test]
    fn kummer_johnson_general_index() {
        // Index multiples may be large, or themselves multiples of p-1 or
        // of p; the direct power-sum route covers them all.
        let ctx = ctx();
        for p in primes(5, 199) {
            let multiples = (1u64..=10).chain([p - 1, p, 2 * p]);
            for m in multiples {
                let res = ctx
                    .check(&CheckRequest {
                        id: CongruenceId::C03g,
                        p,
                        m: Some(m),
                        method: MethodChoice::Auto,
                    })
                    .unwrap();
                assert_eq!(res.holds, Some(true), "p = {p}, m = {m}");
            }
        }
        assert!(matches!(
            ctx.check(&CheckRequest {
                id: CongruenceId::C03g,
                p: 7,
                m: None,
                method: MethodChoice::Auto,
            }),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn power_sum_estimates_match_exact_table() {
        let ctx = ctx();
        for p in primes(5, 199) {
            let mut cache = Cache::new(&ctx, p).unwrap();
            let pb = BigUint::from(p);
            let b2 = cache.bernoulli_power_sum(2 * p - 2).unwrap();
            let exact2 = PadicLaurent::from_rational(
                ctx.table.get((2 * p - 2) as usize).unwrap(),
                &pb,
                6,
            )
            .unwrap();
            assert!(b2.congruent(&exact2, 2).unwrap(), "B at 2p-2, p = {p}");
            let b1 = cache.bernoulli_power_sum(p - 1).unwrap();
            let exact1 =
                PadicLaurent::from_rational(ctx.table.get((p - 1) as usize).unwrap(), &pb, 6)
                    .unwrap();
            assert!(b1.congruent(&exact1, 1).unwrap(), "B at p-1, p = {p}");
        }
    }

    #[test]
    fn theorem_entries_hold_small_range() {
        let ctx = ctx();
        for p in primes(3, 499) {
            for id in [
                CongruenceId::C01,
                CongruenceId::C03,
                CongruenceId::C04,
                CongruenceId::C06,
                CongruenceId::C12,
            ] {
                assert!(verdict(&ctx, id, p), "{id} at p = {p}");
            }
        }
    }

    #[test]
    fn deeper_entries_hold_small_range() {
        let ctx = ctx();
        for p in primes(3, 199) {
            for id in [
                CongruenceId::C11,
                CongruenceId::C13,
                CongruenceId::C14,
                CongruenceId::C15,
                CongruenceId::C16,
            ] {
                assert!(verdict(&ctx, id, p), "{id} at p = {p}");
            }
            if p >= 5 {
                for id in [CongruenceId::C08, CongruenceId::C10, CongruenceId::C17] {
                    assert!(verdict(&ctx, id, p), "{id} at p = {p}");
                }
            }
        }
    }

    #[test]
    fn wilson_criteria_equivalent_small_range() {
        let ctx = ctx();
        for p in primes(3, 199) {
            assert_eq!(
                verdict(&ctx, CongruenceId::C02, p),
                verdict(&ctx, CongruenceId::C05, p),
                "p = {p}"
            );
        }
    }

    #[test]
    fn lerch_criteria_agreement_examples() {
        let ctx = ctx();
        let at103 = ctx.lerch_criteria_agree(103).unwrap();
        assert!(at103.agree);
        assert!(at103.c07 && at103.c09.unwrap() && at103.c18 && at103.c19.unwrap());

        let at5 = ctx.lerch_criteria_agree(5).unwrap();
        assert!(at5.agree);
        assert!(!at5.c07 && !at5.c09.unwrap() && !at5.c18 && !at5.c19.unwrap());

        let at3 = ctx.lerch_criteria_agree(3).unwrap();
        assert!(at3.agree);
        assert!(at3.c07 && at3.c18);
        assert!(at3.c09.is_none() && at3.c19.is_none());
    }

    #[test]
    fn lerch_criteria_agree_small_sweep() {
        let ctx = ctx();
        for p in primes(5, 199) {
            let a = ctx.lerch_criteria_agree(p).unwrap();
            assert!(a.agree, "p = {p}");
            assert_eq!(a.c07, p == 103, "only 103 is Lerch below 200");
        }
    }

    #[test]
    fn stringency_progression_small_sweep() {
        let ctx = ctx();
        for p in primes(3, 199) {
            let s = ctx.stringency_progression(p).unwrap();
            assert!(s.c03, "C03 holds for every prime, p = {p}");
            assert!(s.consistent, "p = {p}");
        }
        // p = 5 satisfies the strongest condition outright.
        let s5 = ctx.stringency_progression(5).unwrap();
        assert!(s5.c20 && s5.c05 && s5.c03);
    }

    #[test]
    fn method_independence_small_range() {
        let ctx = ctx();
        for p in primes(5, 199) {
            for id in [
                CongruenceId::C01,
                CongruenceId::C02,
                CongruenceId::C03,
                CongruenceId::C04,
                CongruenceId::C05,
            ] {
                let run = |method| {
                    ctx.check(&CheckRequest {
                        id,
                        p,
                        m: None,
                        method,
                    })
                    .unwrap()
                };
                let direct = run(MethodChoice::Direct);
                let exact = run(MethodChoice::ExactBernoulli);
                assert_eq!(direct.holds, exact.holds, "{id} at p = {p}");
            }
            for id in [CongruenceId::C19, CongruenceId::C20] {
                if p < id.min_p() {
                    continue;
                }
                let est = ctx
                    .check(&CheckRequest {
                        id,
                        p,
                        m: None,
                        method: MethodChoice::PadicEstimate,
                    })
                    .unwrap();
                let exact = ctx
                    .check(&CheckRequest {
                        id,
                        p,
                        m: None,
                        method: MethodChoice::ExactBernoulli,
                    })
                    .unwrap();
                assert_eq!(est.holds, exact.holds, "{id} at p = {p}");
                assert!(est.note.unwrap().contains("derived-from-same-data"));
            }
        }
    }

    #[test]
    fn methods_error_when_forced_out_of_range() {
        let ctx = CheckContext::new(99);
        assert!(matches!(
            ctx.check(&CheckRequest {
                id: CongruenceId::C19,
                p: 101,
                m: None,
                method: MethodChoice::ExactBernoulli,
            }),
            Err(Error::MethodUnavailable { .. })
        ));
        // ... but the estimate route still answers, flagged.
        let est = ctx
            .check(&CheckRequest::auto(CongruenceId::C19, 101))
            .unwrap();
        assert_eq!(est.method, Some(Method::PadicEstimate));
        // C17 has no honest route above the cutoff.
        assert!(matches!(
            ctx.check(&CheckRequest::auto(CongruenceId::C17, 101)),
            Err(Error::MethodUnavailable { .. })
        ));
        // check_all embeds that failure instead of erroring.
        let all = ctx.check_all(101).unwrap();
        let c17 = all.iter().find(|r| r.id == CongruenceId::C17).unwrap();
        assert!(c17.applicable);
        assert!(c17.holds.is_none());
        assert!(c17.note.as_ref().unwrap().contains("method unavailable"));
    }

    #[test]
    fn composite_input_is_rejected() {
        let ctx = ctx();
        assert!(matches!(
            ctx.check(&CheckRequest::auto(CongruenceId::C06, 9)),
            Err(Error::NotOddPrime(9))
        ));
        assert!(matches!(ctx.check_all(2), Err(Error::NotOddPrime(2))));
    }

    #[test]
    fn report_rows_serialize_in_declared_order() {
        let ctx = ctx();
        let res = ctx
            .check(&CheckRequest::auto(CongruenceId::C06, 5))
            .unwrap();
        let json = serde_json::to_string(&res.to_row()).unwrap();
        let id_pos = json.find("\"id\"").unwrap();
        let holds_pos = json.find("\"holds\"").unwrap();
        let method_pos = json.find("\"method\"").unwrap();
        assert!(id_pos < holds_pos && holds_pos < method_pos);
    }
}
