//! Serializable certificates.
//!
//! A certificate names a claim (`kind` and `parameters`), carries the data
//! needed to check it again (`payload`), and records the verdict at
//! emission time. [`recheck`] recomputes the verdict from the parameters
//! and payload alone.

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::complex::{
    shelling_exists, verify_partitioning, verify_shelling, BalancedComplex, OrderIndex,
    PartitionAssignment, PartitioningVerdict, SearchOutcome, ShellingVerdict,
};
use crate::error::{BuildError, SeriesError};
use crate::partition::{
    build_partitioning, conjecture_scan, lex_quotient, rp2_witness, FacetRule, Rp2Report,
    ScanRow,
};
use crate::series::{molien, monomial_orbit_count, PermGroup};
use crate::support::Support;
use crate::wreath::{face_ring_hilbert, gs_numerator, hilbert_numerator, wreath_complex};

pub const SCHEMA: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CertificateKind {
    Shelling,
    Partitioning,
    Nonshellability,
    SeriesIdentity,
    ConjectureScan,
    Rp2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    /// The claim holds.
    Verified,
    /// The claim fails; the payload holds the counterexample.
    Falsified,
    /// Data only, no claim.
    Data,
}

/// Which complex a certificate is about.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    /// `Δ(B_kn)/S_k≀S_n`.
    Wreath,
    /// `Δ(Π_n)/S_n`.
    Partition,
    /// Molien series of `S_k≀S_n` on `kn` letters.
    Invariants,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Parameters {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub family: Option<Family>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub max_degree: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub budget: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub schema: u32,
    pub kind: CertificateKind,
    pub parameters: Parameters,
    pub payload: Value,
    pub verdict: Verdict,
    pub version: String,
    /// Milliseconds; only present when timing was requested, so that
    /// output is otherwise byte-stable.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub wall_time_ms: Option<u64>,
}

#[derive(Debug, Error)]
pub enum CertificateError {
    #[error(transparent)]
    Build(#[from] BuildError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error("malformed certificate: {0}")]
    Malformed(String),
    #[error("unsupported schema version {0}")]
    Schema(u32),
    #[error("search budget of {budget} nodes exhausted after {nodes} nodes")]
    BudgetExceeded { budget: u64, nodes: u64 },
    #[error("coefficient does not fit in 64 bits")]
    Overflow,
}

impl From<serde_json::Error> for CertificateError {
    fn from(e: serde_json::Error) -> Self {
        CertificateError::Malformed(e.to_string())
    }
}

impl From<crate::error::ComplexError> for CertificateError {
    fn from(e: crate::error::ComplexError) -> Self {
        CertificateError::Build(e.into())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShellingEntry {
    pub facet: String,
    pub descents: Support,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShellingPayload {
    /// Facet names in shelling order, with their topological descents.
    pub steps: Vec<ShellingEntry>,
    pub failure: Option<ShellingFailure>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShellingFailure {
    /// 1-based position in the order.
    pub step: usize,
    pub facet: String,
    /// A maximal earlier face of codimension greater than one.
    pub witness: Support,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonshellabilityPayload {
    pub facets: Vec<String>,
    pub nodes: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitioningPayload {
    pub facets: Vec<String>,
    pub minimal: Vec<Support>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub rules: Option<Vec<FacetRule>>,
    /// Lexicographic positions (0-based) of the non-shelling steps.
    pub non_shelling: Vec<usize>,
    pub verification: PartitioningVerdict,
    /// Supports where the minimal-face count differs from `h_S`.
    pub histogram_mismatch: Vec<Support>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesPayload {
    /// First series, from `q^0`.
    pub left: Vec<i64>,
    /// Second series or polynomial it is compared with.
    pub right: Vec<i64>,
    /// What `left` and `right` are.
    pub identity: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub hilbert: Option<Vec<i64>>,
}

fn certificate(kind: CertificateKind, parameters: Parameters, payload: impl Serialize, verdict: Verdict) -> Certificate {
    Certificate {
        schema: SCHEMA,
        kind,
        parameters,
        payload: serde_json::to_value(payload).expect("payload types serialize"),
        verdict,
        version: crate::VERSION.to_string(),
        wall_time_ms: None,
    }
}

fn verified(ok: bool) -> Verdict {
    if ok {
        Verdict::Verified
    } else {
        Verdict::Falsified
    }
}

fn wreath_params(k: usize, n: usize) -> Parameters {
    Parameters {
        family: Some(Family::Wreath),
        k: Some(k),
        n: Some(n),
        ..Parameters::default()
    }
}

fn partition_params(n: usize) -> Parameters {
    Parameters {
        family: Some(Family::Partition),
        n: Some(n),
        ..Parameters::default()
    }
}

fn shelling_payload(c: &BalancedComplex, order: &[usize]) -> Result<ShellingPayload, CertificateError> {
    let cert = verify_shelling(c, order)?;
    let steps = cert
        .steps
        .iter()
        .map(|st| ShellingEntry {
            facet: c.facet_name(st.facet).to_string(),
            descents: st.descents,
        })
        .collect();
    let failure = match cert.verdict {
        ShellingVerdict::Pass => None,
        ShellingVerdict::Fail { step, facet, witness, .. } => Some(ShellingFailure {
            step,
            facet: c.facet_name(facet).to_string(),
            witness,
        }),
    };
    Ok(ShellingPayload { steps, failure })
}

fn complex_for(p: &Parameters) -> Result<BalancedComplex, CertificateError> {
    let need = |x: Option<usize>, name: &str| x.ok_or_else(|| CertificateError::Malformed(format!("missing parameter {name}")));
    match p.family {
        Some(Family::Wreath) => Ok(wreath_complex(need(p.k, "k")?, need(p.n, "n")?)?),
        Some(Family::Partition) => Ok(lex_quotient(need(p.n, "n")?)?),
        _ => Err(CertificateError::Malformed("family must be wreath or partition".into())),
    }
}

fn resolve(c: &BalancedComplex, names: &[String]) -> Result<Vec<usize>, CertificateError> {
    names
        .iter()
        .map(|name| {
            c.facet_names()
                .iter()
                .position(|x| x == name)
                .ok_or_else(|| CertificateError::Malformed(format!("unknown facet {name}")))
        })
        .collect()
}

/// Lexicographic order as a shelling of `Δ(B_kn)/S_k≀S_n`.
pub fn wreath_shelling(k: usize, n: usize) -> Result<Certificate, CertificateError> {
    let c = wreath_complex(k, n)?;
    let order: Vec<usize> = (0..c.facet_count()).collect();
    let payload = shelling_payload(&c, &order)?;
    let verdict = verified(payload.failure.is_none());
    Ok(certificate(CertificateKind::Shelling, wreath_params(k, n), payload, verdict))
}

/// Exhaustive search for any shelling order of `Δ(B_kn)/S_k≀S_n`. Finding
/// one yields a shelling certificate; exhausting the search yields a
/// nonshellability certificate.
pub fn wreath_search(k: usize, n: usize, budget: u64) -> Result<Certificate, CertificateError> {
    let c = wreath_complex(k, n)?;
    let params = Parameters {
        budget: Some(budget),
        ..wreath_params(k, n)
    };
    match shelling_exists(&c, budget) {
        SearchOutcome::Found(order) => {
            let payload = shelling_payload(&c, &order)?;
            let verdict = verified(payload.failure.is_none());
            Ok(certificate(CertificateKind::Shelling, params, payload, verdict))
        }
        SearchOutcome::NoneExists { nodes } => {
            let payload = NonshellabilityPayload {
                facets: c.facet_names().to_vec(),
                nodes,
            };
            Ok(certificate(CertificateKind::Nonshellability, params, payload, Verdict::Verified))
        }
        SearchOutcome::BudgetExceeded { nodes } => Err(CertificateError::BudgetExceeded { budget, nodes }),
    }
}

fn to_i64(s: &crate::series::TruncatedSeries) -> Result<Vec<i64>, CertificateError> {
    s.to_i64().ok_or(CertificateError::Overflow)
}

fn trim(mut v: Vec<i64>) -> Vec<i64> {
    while v.len() > 1 && v.last() == Some(&0) {
        v.pop();
    }
    v
}

/// `H(q) · Π_{r=1}^{kn-1} (1-q^r)` for the invariant ring, compared with the
/// Garsia–Stanton numerator of the lexicographic descents when those form a
/// shelling, and otherwise with the flag h-vector numerator.
pub fn wreath_series(k: usize, n: usize, degree: usize) -> Result<Certificate, CertificateError> {
    let c = wreath_complex(k, n)?;
    let d = c.colors();
    let h = face_ring_hilbert(&c, degree);
    let numerator = trim(to_i64(&hilbert_numerator(&h, d))?);
    let order: Vec<usize> = (0..c.facet_count()).collect();
    let shelled = verify_shelling(&c, &order)?.passed();
    let (right, identity) = if shelled {
        let idx = OrderIndex::new(&c, &order)?;
        let a = PartitionAssignment::new((0..c.facet_count()).map(|f| idx.descents(&c, f)).collect());
        (gs_numerator(&c, &a)?, "hilbert-numerator = garsia-stanton-numerator")
    } else {
        (crate::wreath::h_numerator(&c.flag_h()), "hilbert-numerator = flag-h-numerator")
    };
    let ok = numerator == trim(right.clone()) && right.iter().sum::<i64>() == c.facet_count() as i64;
    let payload = SeriesPayload {
        left: numerator,
        right,
        identity: identity.to_string(),
        hilbert: Some(to_i64(&h)?),
    };
    let params = Parameters {
        max_degree: Some(degree),
        ..wreath_params(k, n)
    };
    Ok(certificate(CertificateKind::SeriesIdentity, params, payload, verified(ok)))
}

/// Molien series of `S_k≀S_n` against monomial orbit counts, degree by
/// degree.
pub fn molien_identity(k: usize, n: usize, degree: usize) -> Result<Certificate, CertificateError> {
    let g = PermGroup::wreath(k, n)?;
    let left = to_i64(&molien(&g, degree)?)?;
    let right = (0..=degree)
        .map(|d| monomial_orbit_count(&g, d).map(|x| x as i64))
        .collect::<Result<Vec<_>, _>>()?;
    let ok = left == right;
    let payload = SeriesPayload {
        left,
        right,
        identity: "molien = monomial-orbit-count".to_string(),
        hilbert: None,
    };
    let params = Parameters {
        family: Some(Family::Invariants),
        k: Some(k),
        n: Some(n),
        max_degree: Some(degree),
        budget: None,
    };
    Ok(certificate(CertificateKind::SeriesIdentity, params, payload, verified(ok)))
}

fn histogram_mismatch(c: &BalancedComplex, minimal: &[Support]) -> Vec<Support> {
    let hist = PartitionAssignment::new(minimal.to_vec()).histogram(c.colors());
    let h = c.flag_h();
    c.full_support().subsets().filter(|&s| hist[s.index()] != h.get(s)).collect()
}

/// The partitioning of `Δ(Π_n)/S_n` built from the lexicographic shelling
/// steps and the link rules, with its verification.
pub fn partition_partitioning(n: usize) -> Result<Certificate, CertificateError> {
    let report = build_partitioning(n)?;
    let c = lex_quotient(n)?;
    let mismatch = histogram_mismatch(&c, &report.assignment.minimal);
    let ok = report.verdict.passed() && mismatch.is_empty();
    let payload = PartitioningPayload {
        facets: report.names,
        minimal: report.assignment.minimal,
        rules: Some(report.rules),
        non_shelling: report.non_shelling,
        verification: report.verdict,
        histogram_mismatch: mismatch,
    };
    Ok(certificate(CertificateKind::Partitioning, partition_params(n), payload, verified(ok)))
}

/// The link of the three-element chain in `Δ(Π_8)/S_8` checked against a
/// real projective plane: f-vector `(3,6,4)`, GF(2) Betti `(1,1,1)`.
pub fn rp2() -> Result<Certificate, CertificateError> {
    let report = rp2_witness()?;
    let ok = rp2_ok(&report);
    Ok(certificate(CertificateKind::Rp2, Parameters::default(), report, verified(ok)))
}

fn rp2_ok(r: &Rp2Report) -> bool {
    r.f_vector == [3, 6, 4] && r.betti == [1, 1, 1]
}

pub fn scan(n: usize) -> Result<Certificate, CertificateError> {
    let rows = conjecture_scan(n)?;
    Ok(certificate(CertificateKind::ConjectureScan, partition_params(n), rows, Verdict::Data))
}

fn payload<T: for<'de> Deserialize<'de>>(cert: &Certificate) -> Result<T, CertificateError> {
    Ok(serde_json::from_value(cert.payload.clone())?)
}

/// Recomputes the verdict of a certificate. Orders and assignments in the
/// payload are checked directly; data payloads are recomputed and compared,
/// and any disagreement yields [`Verdict::Falsified`].
pub fn recheck(cert: &Certificate) -> Result<Verdict, CertificateError> {
    if cert.schema != SCHEMA {
        return Err(CertificateError::Schema(cert.schema));
    }
    let p = &cert.parameters;
    match cert.kind {
        CertificateKind::Shelling => {
            let claimed: ShellingPayload = payload(cert)?;
            let c = complex_for(p)?;
            let names: Vec<String> = claimed.steps.iter().map(|s| s.facet.clone()).collect();
            let order = resolve(&c, &names)?;
            let fresh = shelling_payload(&c, &order)?;
            if fresh != claimed {
                return Ok(Verdict::Falsified);
            }
            Ok(verified(fresh.failure.is_none()))
        }
        CertificateKind::Nonshellability => {
            let claimed: NonshellabilityPayload = payload(cert)?;
            let c = complex_for(p)?;
            if c.facet_names() != claimed.facets.as_slice() {
                return Ok(Verdict::Falsified);
            }
            let budget = p.budget.unwrap_or(crate::complex::DEFAULT_BUDGET);
            match shelling_exists(&c, budget) {
                SearchOutcome::NoneExists { .. } => Ok(Verdict::Verified),
                SearchOutcome::Found(_) => Ok(Verdict::Falsified),
                SearchOutcome::BudgetExceeded { nodes } => Err(CertificateError::BudgetExceeded { budget, nodes }),
            }
        }
        CertificateKind::Partitioning => {
            let claimed: PartitioningPayload = payload(cert)?;
            let c = complex_for(p)?;
            let order = resolve(&c, &claimed.facets)?;
            let mut minimal = vec![Support::EMPTY; c.facet_count()];
            for (&f, &g) in order.iter().zip(&claimed.minimal) {
                minimal[f] = g;
            }
            if order.len() != c.facet_count() {
                return Ok(Verdict::Falsified);
            }
            let pass = verify_partitioning(&c, &PartitionAssignment::new(minimal.clone()))?.passed();
            Ok(verified(pass && histogram_mismatch(&c, &minimal).is_empty()))
        }
        CertificateKind::SeriesIdentity => {
            let (k, n, d) = match (p.k, p.n, p.max_degree) {
                (Some(k), Some(n), Some(d)) => (k, n, d),
                _ => return Err(CertificateError::Malformed("series needs k, n and max_degree".into())),
            };
            let fresh = match p.family {
                Some(Family::Wreath) => wreath_series(k, n, d)?,
                Some(Family::Invariants) => molien_identity(k, n, d)?,
                _ => return Err(CertificateError::Malformed("series family must be wreath or invariants".into())),
            };
            if fresh.payload != cert.payload {
                return Ok(Verdict::Falsified);
            }
            Ok(fresh.verdict)
        }
        CertificateKind::ConjectureScan => {
            let claimed: Vec<ScanRow> = payload(cert)?;
            let n = p.n.ok_or_else(|| CertificateError::Malformed("missing parameter n".into()))?;
            if conjecture_scan(n)? != claimed {
                return Ok(Verdict::Falsified);
            }
            Ok(Verdict::Data)
        }
        CertificateKind::Rp2 => {
            let claimed: Rp2Report = payload(cert)?;
            let fresh = rp2_witness()?;
            if fresh != claimed {
                return Ok(Verdict::Falsified);
            }
            Ok(verified(rp2_ok(&fresh)))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wreath_shelling_round_trips() {
        let cert = wreath_shelling(2, 3).unwrap();
        assert_eq!(cert.verdict, Verdict::Verified);
        let text = serde_json::to_string(&cert).unwrap();
        let back: Certificate = serde_json::from_str(&text).unwrap();
        assert_eq!(back, cert);
        assert_eq!(recheck(&back).unwrap(), Verdict::Verified);
    }

    #[test]
    fn tampered_order_is_caught() {
        let mut cert = wreath_shelling(2, 3).unwrap();
        let mut p: ShellingPayload = payload(&cert).unwrap();
        p.steps.swap(0, 14);
        cert.payload = serde_json::to_value(p).unwrap();
        assert_eq!(recheck(&cert).unwrap(), Verdict::Falsified);
    }

    #[test]
    fn wrong_schema_is_rejected() {
        let mut cert = rp2_like();
        cert.schema = 2;
        assert!(matches!(recheck(&cert), Err(CertificateError::Schema(2))));
    }

    fn rp2_like() -> Certificate {
        certificate(CertificateKind::Rp2, Parameters::default(), Value::Null, Verdict::Verified)
    }

    #[test]
    fn partitioning_of_small_quotient() {
        let cert = partition_partitioning(5).unwrap();
        assert_eq!(cert.verdict, Verdict::Verified);
        assert_eq!(recheck(&cert).unwrap(), Verdict::Verified);
    }
}
