//! JSON and plain-text reports.

use serde::Serialize;
use sha2::{Digest, Sha256};

use cnfstruct::classify::{self, ClassReport, Limits, Tri};
use cnfstruct::matching;
use cnfstruct::model::{MultiClauseSet, Var};
use cnfstruct::reduce::{self, ReductionTrace};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Serialize)]
pub struct InputInfo {
    pub sha256: String,
    pub bytes: usize,
}

impl InputInfo {
    pub fn of(bytes: &[u8]) -> Self {
        InputInfo { sha256: hex::encode(Sha256::digest(bytes)), bytes: bytes.len() }
    }
}

#[derive(Debug, Serialize)]
pub struct MeasuresBlock {
    pub n: usize,
    pub c: u64,
    pub delta: i64,
    pub delta_star: i64,
    pub ell: u64,
    pub sigma: i64,
    /// `null` for +∞
    pub minvdeg: Option<u64>,
    pub varmvd: Vec<Var>,
    pub nfc: u64,
}

#[derive(Debug, Serialize)]
pub struct ReductionSummary {
    pub steps: usize,
    pub surplus_steps: usize,
    pub removed: u64,
    pub result_n: usize,
    pub result_c: u64,
}

impl ReductionSummary {
    pub fn of(t: &ReductionTrace) -> Self {
        ReductionSummary {
            steps: t.steps.len(),
            surplus_steps: t.surplus_steps(),
            removed: t.removed(),
            result_n: t.result.n(),
            result_c: t.result.c(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct AnalysisReport {
    pub schema_version: u32,
    pub input: InputInfo,
    pub measures: MeasuresBlock,
    pub surplus_witness: Option<Vec<Var>>,
    pub classes: ClassReport,
    pub reduction: ReductionSummary,
}

impl AnalysisReport {
    pub fn new(raw: &[u8], f: &MultiClauseSet, limits: &Limits) -> Self {
        let m = f.measures();
        let s = matching::surplus(f);
        AnalysisReport {
            schema_version: SCHEMA_VERSION,
            input: InputInfo::of(raw),
            measures: MeasuresBlock {
                n: m.n,
                c: m.c,
                delta: m.delta,
                delta_star: matching::delta_star(f),
                ell: m.ell,
                sigma: s.value,
                minvdeg: m.minvdeg,
                varmvd: m.varmvd,
                nfc: m.nfc,
            },
            surplus_witness: s.witness.map(|w| w.into_iter().collect()),
            classes: classify::classify(f, limits),
            reduction: ReductionSummary::of(&reduce::autarky_reduce(f, false, 0)),
        }
    }

    pub fn plain(&self) -> String {
        let m = &self.measures;
        let join = |v: &[Var]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
        let c = &self.classes;
        let flags: [(&str, Tri); 11] = [
            ("sat", c.sat),
            ("hitting", c.hitting),
            ("unsat_hitting", c.unsat_hitting),
            ("mu", c.mu),
            ("smu", c.smu),
            ("marginal_mu", c.marginal_mu),
            ("lean", c.lean),
            ("matching_lean", c.matching_lean),
            ("vmu", c.vmu),
            ("sed", c.sed),
            ("mlcr", c.mlcr),
        ];
        let mut out = format!(
            "n: {}\nc: {}\ndelta: {}\ndelta_star: {}\nell: {}\nsigma: {}\nsigma_witness: {}\nminvdeg: {}\nvarmvd: {}\nnfc: {}\n",
            m.n,
            m.c,
            m.delta,
            m.delta_star,
            m.ell,
            m.sigma,
            self.surplus_witness.as_deref().map_or("-".into(), join),
            m.minvdeg.map_or("inf".into(), |d| d.to_string()),
            join(&m.varmvd),
            m.nfc,
        );
        for (name, t) in flags {
            out.push_str(&format!("{name}: {t}\n"));
        }
        let r = &self.reduction;
        out.push_str(&format!(
            "reduction: {} surplus steps, {} clauses removed, result n={} c={}\n",
            r.surplus_steps, r.removed, r.result_n, r.result_c
        ));
        out.push_str(&format!("limits: {}\n", c.limits));
        out
    }
}

#[derive(Debug, Serialize)]
pub struct ReduceReport<'a> {
    pub schema_version: u32,
    pub input: InputInfo,
    pub limits: Limits,
    pub summary: ReductionSummary,
    pub trace: &'a ReductionTrace,
    pub result_dimacs: String,
}
