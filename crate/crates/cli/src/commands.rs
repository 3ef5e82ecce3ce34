use std::path::Path;

use anyhow::{Context, Result};
use lexshell::certificate::{
    self, Certificate, CertificateKind, NonshellabilityPayload, PartitioningPayload, SeriesPayload,
    ShellingPayload, Verdict,
};
use lexshell::complex::OrderIndex;
use lexshell::partition::{
    b_s_table, check_icc, convert_support, enumerate_partition_facets, facet_cap, lex_quotient,
    FacetRule, IccScope, IccVerdict, Label3, Rp2Report, ScanRow,
};
use lexshell::wreath::{enumerate_wreath_facets, wreath_complex};
use serde::Serialize;
use serde_json::json;

use crate::output::{joined, Report, Status, Table};

fn to_json(x: &impl Serialize) -> serde_json::Value {
    serde_json::to_value(x).expect("report types serialize")
}

fn from_certificate(cert: &Certificate, table: Table) -> Report {
    let status = match cert.verdict {
        Verdict::Falsified => Status::Falsified,
        Verdict::Verified | Verdict::Data => Status::Ok,
    };
    let kind = to_json(&cert.kind);
    let verdict = to_json(&cert.verdict);
    Report {
        json: to_json(cert),
        table,
        status,
        summary: format!("{} {}", kind.as_str().unwrap_or("?"), verdict.as_str().unwrap_or("?")),
    }
}

fn payload<T: for<'de> serde::Deserialize<'de>>(cert: &Certificate) -> Result<T> {
    Ok(serde_json::from_value(cert.payload.clone())?)
}

fn shelling_table(cert: &Certificate) -> Result<Table> {
    let p: ShellingPayload = payload(cert)?;
    let mut t = Table::new(["step", "facet", "descents"]);
    for (i, s) in p.steps.iter().enumerate() {
        t.push([(i + 1).to_string(), s.facet.clone(), s.descents.dashed()]);
    }
    Ok(t)
}

fn certificate_table(cert: &Certificate) -> Result<Table> {
    match cert.kind {
        CertificateKind::Shelling => shelling_table(cert),
        CertificateKind::Nonshellability => {
            let p: NonshellabilityPayload = payload(cert)?;
            let mut t = Table::new(["facet", "search_nodes"]);
            for f in &p.facets {
                t.push([f.clone(), p.nodes.to_string()]);
            }
            Ok(t)
        }
        CertificateKind::Partitioning => {
            let p: PartitioningPayload = payload(cert)?;
            let mut t = Table::new(["index", "facet", "minimal", "rule"]);
            for (i, (f, g)) in p.facets.iter().zip(&p.minimal).enumerate() {
                let rule = match p.rules.as_ref().map(|r| &r[i]) {
                    Some(FacetRule::Link { .. }) => "link",
                    _ => "shelling",
                };
                t.push([i.to_string(), f.clone(), g.dashed(), rule.to_string()]);
            }
            Ok(t)
        }
        CertificateKind::SeriesIdentity => {
            let p: SeriesPayload = payload(cert)?;
            let mut header = vec!["degree"];
            if p.hilbert.is_some() {
                header.push("hilbert");
            }
            header.extend(["left", "right"]);
            let mut t = Table::new(header);
            let len = p.left.len().max(p.right.len()).max(p.hilbert.as_ref().map_or(0, Vec::len));
            let cell = |v: &[i64], i: usize| v.get(i).map_or(String::new(), |x| x.to_string());
            for i in 0..len {
                let mut row = vec![i.to_string()];
                if let Some(h) = &p.hilbert {
                    row.push(cell(h, i));
                }
                row.push(cell(&p.left, i));
                row.push(cell(&p.right, i));
                t.push(row);
            }
            Ok(t)
        }
        CertificateKind::ConjectureScan => {
            let rows: Vec<ScanRow> = payload(cert)?;
            let mut t = Table::new(["S", "converted", "b_S", "reduced_betti"]);
            for r in rows {
                t.push([r.s.dashed(), r.converted.dashed(), r.b_s.to_string(), joined(&r.reduced_betti, "-")]);
            }
            Ok(t)
        }
        CertificateKind::Rp2 => {
            let r: Rp2Report = payload(cert)?;
            let mut t = Table::new(["field", "value"]);
            t.push(["chain".to_string(), r.chain.join(" < ")]);
            t.push(["support".to_string(), r.support.dashed()]);
            t.push(["f_vector".to_string(), joined(&r.f_vector, "-")]);
            t.push(["betti".to_string(), joined(&r.betti, "-")]);
            t.push(["euler".to_string(), r.euler.to_string()]);
            Ok(t)
        }
    }
}

pub fn certified(cert: Certificate) -> Result<Report> {
    let table = certificate_table(&cert)?;
    Ok(from_certificate(&cert, table))
}

fn data(json: serde_json::Value, table: Table, summary: String) -> Report {
    Report {
        json,
        table,
        status: Status::Ok,
        summary,
    }
}

#[derive(Serialize)]
struct FacetRow {
    index: usize,
    name: String,
    descents: lexshell::Support,
    #[serde(skip_serializing_if = "Option::is_none")]
    encoding: Option<String>,
}

pub fn wreath_facets(k: usize, n: usize) -> Result<Report> {
    let reps = enumerate_wreath_facets(k, n)?;
    let c = wreath_complex(k, n)?;
    let order: Vec<usize> = (0..c.facet_count()).collect();
    let idx = OrderIndex::new(&c, &order)?;
    let mut t = Table::new(["index", "word", "descents"]);
    let mut rows = Vec::new();
    for (i, r) in reps.iter().enumerate() {
        let d = idx.descents(&c, i);
        t.push([i.to_string(), r.to_string(), d.dashed()]);
        rows.push(FacetRow {
            index: i,
            name: r.to_string(),
            descents: d,
            encoding: None,
        });
    }
    Ok(data(to_json(&rows), t, format!("{} facets", reps.len())))
}

pub fn partition_facets(n: usize) -> Result<Report> {
    let facets = enumerate_partition_facets(n, facet_cap())?;
    let c = lex_quotient(n)?;
    let order: Vec<usize> = (0..c.facet_count()).collect();
    let idx = OrderIndex::new(&c, &order)?;
    let mut t = Table::new(["index", "name", "encoding", "descents"]);
    let mut rows = Vec::new();
    for (i, f) in facets.iter().enumerate() {
        let d = idx.descents(&c, i);
        t.push([i.to_string(), f.name(), f.encoding.to_string(), d.dashed()]);
        rows.push(FacetRow {
            index: i,
            name: f.name(),
            descents: d,
            encoding: Some(f.encoding.to_string()),
        });
    }
    Ok(data(to_json(&rows), t, format!("{} facets", facets.len())))
}

fn label_text(l: &Label3) -> String {
    format!("{}[{}|{}]", l.bar, joined(&l.word, "-"), joined(&l.ancestors, "-"))
}

pub fn partition_labels(n: usize) -> Result<Report> {
    let facets = enumerate_partition_facets(n, facet_cap())?;
    let mut t = Table::new(["index", "name", "labels"]);
    let mut rows = Vec::new();
    for (i, f) in facets.iter().enumerate() {
        let text: Vec<String> = f.labels.iter().map(label_text).collect();
        t.push([i.to_string(), f.name(), text.join(" ")]);
        rows.push(json!({ "index": i, "name": f.name(), "labels": f.labels }));
    }
    Ok(data(serde_json::Value::Array(rows), t, format!("{} facets", facets.len())))
}

pub fn partition_bs(n: usize) -> Result<Report> {
    let table = b_s_table(n)?;
    let mut t = Table::new(["S", "converted", "b_S"]);
    for &(s, v) in &table.values {
        t.push([s.dashed(), convert_support(n, s).dashed(), v.to_string()]);
    }
    Ok(data(to_json(&table), t, format!("{} supports", table.values.len())))
}

pub fn partition_icc(n: usize, sample: Option<usize>) -> Result<Report> {
    let scope = sample.map_or(IccScope::All, IccScope::Sample);
    let verdict = check_icc(n, scope)?;
    let mut t = Table::new(["field", "value"]);
    let (status, summary) = match &verdict {
        IccVerdict::Pass { intervals } => {
            t.push(["verdict", "pass"]);
            t.push(["intervals".to_string(), intervals.to_string()]);
            (Status::Ok, format!("icc pass on {intervals} intervals"))
        }
        IccVerdict::Fail(w) => {
            t.push(["verdict", "fail"]);
            t.push(["facet".to_string(), w.facet.to_string()]);
            t.push(["root".to_string(), w.root.dashed()]);
            t.push(["increasing".to_string(), joined(&w.increasing, "-")]);
            t.push(["names".to_string(), w.names.join(" ")]);
            (Status::Falsified, "icc fail".to_string())
        }
    };
    Ok(Report {
        json: to_json(&verdict),
        table: t,
        status,
        summary,
    })
}

pub fn verify(path: &Path) -> Result<Report> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let cert: Certificate = serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    let fresh = certificate::recheck(&cert)?;
    let agree = fresh == cert.verdict;
    let mut t = Table::new(["kind", "recorded", "recomputed", "reproduced"]);
    let s = |x: serde_json::Value| x.as_str().unwrap_or("?").to_string();
    t.push([s(to_json(&cert.kind)), s(to_json(&cert.verdict)), s(to_json(&fresh)), agree.to_string()]);
    Ok(Report {
        json: json!({ "kind": cert.kind, "recorded": cert.verdict, "recomputed": fresh, "reproduced": agree }),
        table: t,
        status: if agree { Status::Ok } else { Status::Falsified },
        summary: format!("verdict {}", if agree { "reproduced" } else { "not reproduced" }),
    })
}
