//! One function per subcommand. Each returns a finished [`Report`] or a
//! [`CliError`] that maps to exit code 1 or 2.

use std::collections::BTreeMap;

use nilform_core::decompose::{
    abelian_radical_decompose, euclidean_type_analyze, stabilizer_audit, Decomposition,
};
use nilform_core::experiments::{
    verify_euclidean as solve_euclidean, verify_skew_pairing as solve_skew_pairing,
    EuclideanVerdict, SkewPairingVerdict,
};
use nilform_core::gallery::{gallery_entry, ENTRIES};
use nilform_core::lie::{LeviDecomposition, LieAlgebra};
use nilform_core::metric::{all_checks, analyze_with, Certificate, Status, SymBilinearForm};
use nilform_core::Error as CoreError;
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::document::{AlgebraDocument, DocumentError, LoadedDocument};
use crate::report::{grade, CommandEcho, Exit, InputEcho, Report};

pub const GALLERY_SCHEME: &str = "gallery://";
pub const DEFAULT_MAX_DIM: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CliError {
    #[error("{0}")]
    Invalid(String),
    #[error("{0}")]
    Hypothesis(String),
}

impl CliError {
    pub fn exit(&self) -> Exit {
        match self {
            CliError::Invalid(_) => Exit::InvalidInput,
            CliError::Hypothesis(_) => Exit::HypothesisViolation,
        }
    }
}

impl From<DocumentError> for CliError {
    fn from(e: DocumentError) -> Self {
        CliError::Invalid(e.to_string())
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::Hypothesis(_) | CoreError::Unsupported(_) => {
                CliError::Hypothesis(e.to_string())
            }
            _ => CliError::Invalid(e.to_string()),
        }
    }
}

/// Options shared by every command.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Settings {
    /// Seed for the `random-*` gallery entries.
    pub seed: u64,
    pub max_dim: usize,
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            seed: 0,
            max_dim: DEFAULT_MAX_DIM,
        }
    }
}

/// Parses a `NILFORM_MAX_DIM` value; `None` gives the default.
pub fn max_dim_from_env(value: Option<&str>) -> Result<usize, CliError> {
    match value {
        None => Ok(DEFAULT_MAX_DIM),
        Some(s) => s
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|&d| d > 0)
            .ok_or_else(|| {
                CliError::Invalid(format!(
                    "NILFORM_MAX_DIM must be a positive integer, got {s:?}"
                ))
            }),
    }
}

/// Gallery names close to `name`, best first.
pub fn suggestions(name: &str) -> Vec<&'static str> {
    let mut scored: Vec<(f64, &'static str)> = ENTRIES
        .iter()
        .map(|e| (strsim::normalized_damerau_levenshtein(name, e.name), e.name))
        .filter(|&(s, n)| s >= 0.5 || n.contains(name) || (!n.is_empty() && name.contains(n)))
        .collect();
    scored.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(b.1)));
    scored.into_iter().take(3).map(|(_, n)| n).collect()
}

fn unknown_entry(name: &str) -> CliError {
    let near = suggestions(name);
    let hint = if near.is_empty() {
        "run `nilform gallery list` for the available entries".to_string()
    } else {
        format!("did you mean: {}?", near.join(", "))
    };
    CliError::Invalid(format!("unknown gallery entry '{name}'; {hint}"))
}

pub fn gallery_document(name: &str, seed: u64) -> Result<AlgebraDocument, CliError> {
    if !ENTRIES.iter().any(|e| e.name == name) {
        return Err(unknown_entry(name));
    }
    Ok(AlgebraDocument::from_gallery(&gallery_entry(name, seed)?))
}

pub fn gallery_list() -> Value {
    let entries: Vec<Value> = ENTRIES
        .iter()
        .map(|e| json!({"name": e.name, "description": e.description, "highlights": e.highlights}))
        .collect();
    json!({ "entries": entries })
}

/// Reads `gallery://NAME`, `-` (stdin) or a file path.
pub fn load_input(
    source: &str,
    settings: Settings,
) -> Result<(InputEcho, LoadedDocument), CliError> {
    let doc = if let Some(name) = source.strip_prefix(GALLERY_SCHEME) {
        gallery_document(name, settings.seed)?
    } else {
        let text = if source == "-" {
            std::io::read_to_string(std::io::stdin())
        } else {
            std::fs::read_to_string(source)
        }
        .map_err(|e| CliError::Invalid(format!("cannot read {source}: {e}")))?;
        AlgebraDocument::from_json(&text)?
    };
    let loaded = doc.load(settings.max_dim)?;
    let echo = InputEcho {
        source: source.into(),
        name: loaded.document.name.clone(),
        dim: loaded.algebra.dim(),
        digest: loaded.digest.clone(),
    };
    Ok((echo, loaded))
}

fn echo(name: &str, args: impl IntoIterator<Item = (&'static str, Value)>) -> CommandEcho {
    CommandEcho {
        name: name.into(),
        args: args.into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
    }
}

/// Report for a command that stopped on `err`.
pub fn error_report(command: CommandEcho, err: &CliError) -> Report {
    let mut r = Report::new(command, None);
    r.result("error", err.to_string());
    r.line(format!("error: {err}"));
    r.escalate(err.exit());
    r
}

fn require_form(loaded: &LoadedDocument) -> Result<&SymBilinearForm, CliError> {
    loaded.form.as_ref().ok_or_else(|| {
        CliError::Hypothesis(format!(
            "document '{}' has no form; this command needs one",
            loaded.document.name
        ))
    })
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn triple((a, b, c): (usize, usize, usize)) -> String {
    format!("({a},{b},{c})")
}

/// Basis-free shape of a Levi decomposition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LeviSummary {
    pub radical_dim: usize,
    pub radical_abelian: bool,
    pub levi_dim: usize,
    pub compact_dim: usize,
    pub noncompact_dim: usize,
    /// `(dim, compact, killing signature)`, sorted.
    pub simple_ideals: Vec<(usize, bool, (usize, usize, usize))>,
}

impl LeviSummary {
    pub fn new(levi: &LeviDecomposition) -> Self {
        let mut simple_ideals: Vec<_> = levi
            .simple_ideals
            .iter()
            .map(|s| (s.handle.dim(), s.compact, s.killing_signature))
            .collect();
        simple_ideals.sort_unstable();
        LeviSummary {
            radical_dim: levi.radical.dim(),
            radical_abelian: levi.radical.is_abelian,
            levi_dim: levi.levi.dim(),
            compact_dim: levi.compact_part.dim(),
            noncompact_dim: levi.noncompact_part.dim(),
            simple_ideals,
        }
    }

    fn line(&self) -> String {
        format!(
            "radical dim {} ({}abelian); Levi factor dim {} (compact {}, noncompact {}); simple ideal dims {:?}",
            self.radical_dim,
            if self.radical_abelian { "" } else { "non-" },
            self.levi_dim,
            self.compact_dim,
            self.noncompact_dim,
            self.simple_ideals.iter().map(|s| s.0).collect::<Vec<_>>()
        )
    }
}

/// Records each certificate's status and fails the report on a refuted one.
fn record_certificates(r: &mut Report, certs: &[Certificate]) {
    for c in certs {
        r.verdict(c.name.clone(), grade(&c.status));
        let mut line = format!("{}: {}", c.name, grade(&c.status));
        match c.status {
            Status::Failed => {
                let failed: Vec<String> = c
                    .clauses
                    .iter()
                    .filter(|cl| !cl.holds)
                    .map(|cl| match &cl.witness {
                        Some(w) => format!("{} ({w})", cl.name),
                        None => cl.name.clone(),
                    })
                    .collect();
                line.push_str(&format!("; failing clauses: {}", failed.join("; ")));
                r.escalate(Exit::Counterexample);
            }
            Status::NotApplicable if !c.unmet.is_empty() => {
                line.push_str(&format!("; unmet: {}", c.unmet.join("; ")));
            }
            _ => {}
        }
        r.line(line);
    }
}

pub fn analyze(input: &str, settings: Settings) -> Result<Report, CliError> {
    let (echo_in, loaded) = load_input(input, settings)?;
    let form = require_form(&loaded)?;
    let g = &loaded.algebra;
    let levi = g.levi_subalgebra()?;
    let analysis = analyze_with(g, form, &levi)?;
    let certs = all_checks(g, form, &levi, &analysis);
    let summary = LeviSummary::new(&levi);

    let mut r = Report::new(echo("analyze", [("input", json!(input))]), Some(echo_in));
    r.result("analysis", &analysis);
    r.result("kernel_dim", analysis.kernel.dim());
    r.result("levi", &summary);
    r.result("certificates", &certs);
    r.verdict("signature", triple(analysis.signature));
    r.verdict("kernel_dim", analysis.kernel.dim());
    r.verdict("relative_index", analysis.relative_index);
    r.verdict("invariant", analysis.invariant);
    r.verdict("nil_invariant", grade(&analysis.nil_invariant.grade()));
    r.verdict("effective", analysis.effective);
    r.verdict("radical_abelian", analysis.radical_abelian);
    r.line(format!(
        "signature (n+,n-,n0) = {}, kernel dim {}, relative index {}",
        triple(analysis.signature),
        analysis.kernel.dim(),
        analysis.relative_index
    ));
    r.line(format!(
        "invariant: {}{}",
        yes_no(analysis.invariant),
        analysis
            .invariance_witness
            .as_ref()
            .map(|w| format!(" ({})", w.render()))
            .unwrap_or_default()
    ));
    r.line(format!(
        "nil-invariant: {}",
        grade(&analysis.nil_invariant.grade())
    ));
    r.line(format!(
        "effective: {}{}",
        yes_no(analysis.effective),
        if analysis.effective {
            String::new()
        } else {
            format!(
                " (kernel contains nonzero ideal of dimension {})",
                analysis.ideal_in_kernel.dim()
            )
        }
    ));
    r.line(summary.line());
    record_certificates(&mut r, &certs);
    Ok(r)
}

pub fn decompose(input: &str, settings: Settings) -> Result<Report, CliError> {
    let (echo_in, loaded) = load_input(input, settings)?;
    let form = require_form(&loaded)?;
    let g = &loaded.algebra;
    let outcome = abelian_radical_decompose(g, form)?;
    let mut r = Report::new(echo("decompose", [("input", json!(input))]), Some(echo_in));
    r.result("decomposition", &outcome);
    match &outcome {
        Decomposition::HypothesisViolation { violations } => {
            r.verdict("outcome", "hypothesis-violation");
            for v in violations {
                r.verdict(v.hypothesis.clone(), "violated");
                r.line(format!(
                    "hypothesis {} violated: {}",
                    v.hypothesis, v.detail
                ));
            }
            r.escalate(Exit::HypothesisViolation);
        }
        Decomposition::Decomposed(d) => {
            r.verdict("outcome", "decomposed");
            let dims = [d.g1.dim(), d.g2.dim(), d.g3.dim()];
            r.result("factor_dims", dims);
            r.verdict("factor_dims", format!("{dims:?}"));
            for (i, (label, f)) in ["K + A", "S0", "S1 + B"]
                .iter()
                .zip(&d.fingerprints)
                .enumerate()
            {
                r.line(format!(
                    "G{} = {label}: dim {}, Killing signature {}, simple ideal dims {:?}",
                    i + 1,
                    f.dim,
                    triple(f.killing_signature),
                    f.simple_ideal_dims
                ));
            }
            r.line(format!(
                "A = R^S dim {}, B = [S, R^K] dim {}, C dim {}",
                d.a.dim(),
                d.b.dim(),
                d.c.dim()
            ));
            record_certificates(&mut r, &d.certificates);
            let euclid = euclidean_type_analyze(g, form)?;
            r.result("euclidean_type", &euclid);
            record_certificates(&mut r, std::slice::from_ref(&euclid.certificate));
        }
    }
    Ok(r)
}

/// Which subspace `audit-stabilizer` tests.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum AuditTarget {
    /// The document's `stabilizer` annotation.
    Annotation,
    Radical,
    Levi,
}

pub fn audit_stabilizer(
    input: &str,
    target: AuditTarget,
    settings: Settings,
) -> Result<Report, CliError> {
    let (echo_in, loaded) = load_input(input, settings)?;
    let g: &LieAlgebra = &loaded.algebra;
    let h = match target {
        AuditTarget::Annotation => loaded.annotations.stabilizer.clone().ok_or_else(|| {
            CliError::Invalid(format!(
                "document '{}' has no stabilizer annotation",
                loaded.document.name
            ))
        })?,
        AuditTarget::Radical => g.levi_subalgebra()?.radical.space,
        AuditTarget::Levi => g.levi_subalgebra()?.levi.space,
    };
    let audit = stabilizer_audit(g, &h, loaded.annotations.center_part.as_ref())?;
    let mut r = Report::new(
        echo(
            "audit-stabilizer",
            [
                ("input", json!(input)),
                ("subalgebra", json!(grade(&target))),
            ],
        ),
        Some(echo_in),
    );
    r.result("audit", &audit);
    r.result("subalgebra_dim", h.dim());
    r.line(format!(
        "h dim {}, h ∩ K dim {}, projection onto the radical dim {}",
        h.dim(),
        audit.h_cap_k.dim(),
        audit.radical_projection.dim()
    ));
    for (name, flag) in audit.flags.iter() {
        r.verdict(name, flag.holds);
        r.line(match &flag.witness {
            Some(w) => format!("{name}: {} ({w})", flag.holds),
            None => format!("{name}: {}", flag.holds),
        });
    }
    r.verdict("all_hold", audit.flags.all_hold());
    Ok(r)
}

fn strip_basis(mut v: Value, keep: bool) -> Value {
    if !keep {
        if let Some(o) = v.as_object_mut() {
            o.remove("basis");
        }
    }
    v
}

pub fn verify_euclidean(ns: &[usize], include_basis: bool) -> Result<Report, CliError> {
    let mut r = Report::new(
        echo(
            "verify euclidean",
            [("n", json!(ns)), ("include_basis", json!(include_basis))],
        ),
        None,
    );
    let cases = ns
        .iter()
        .map(|&n| solve_euclidean(n))
        .collect::<Result<Vec<_>, _>>()?;
    let mut rows = Vec::with_capacity(cases.len());
    for c in &cases {
        let key = format!("n={}", c.n);
        r.verdict(key.clone(), grade(&c.verdict));
        let mut line = format!(
            "{key}: algebra dim {}, {} generators, solution dim {}, {}",
            c.algebra_dim,
            c.generator_count,
            c.solution_dim,
            grade(&c.verdict)
        );
        match c.verdict {
            EuclideanVerdict::Exception => {
                line.push_str("; nondegenerate invariant solution found");
            }
            EuclideanVerdict::Counterexample => r.escalate(Exit::Counterexample),
            _ => {}
        }
        if let Some(w) = &c.radical_witness {
            line.push_str(&format!("; {w}"));
        }
        r.line(line);
        rows.push(strip_basis(
            serde_json::to_value(c).expect("cases serialize"),
            include_basis,
        ));
    }
    r.result("cases", rows);
    Ok(r)
}

pub fn verify_skew_pairing(ls: &[usize], include_basis: bool) -> Result<Report, CliError> {
    let mut r = Report::new(
        echo(
            "verify skew-pairing",
            [("l", json!(ls)), ("include_basis", json!(include_basis))],
        ),
        None,
    );
    let cases = ls
        .iter()
        .map(|&l| solve_skew_pairing(l))
        .collect::<Result<Vec<_>, _>>()?;
    let mut rows = Vec::with_capacity(cases.len());
    for c in &cases {
        let key = format!("l={}", c.l);
        r.verdict(key.clone(), grade(&c.verdict));
        let mut line = format!(
            "{key}: module dim {}, solution dim {}, {}",
            c.module_dim,
            c.solution_dim,
            grade(&c.verdict)
        );
        if let Some(k) = c.proportional_to_killing {
            line.push_str(&format!("; proportional to Killing: {k}"));
        }
        if c.verdict == SkewPairingVerdict::Counterexample {
            r.escalate(Exit::Counterexample);
        }
        r.line(line);
        rows.push(strip_basis(
            serde_json::to_value(c).expect("cases serialize"),
            include_basis,
        ));
    }
    r.result("cases", rows);
    Ok(r)
}

/// `args` echo for a failing command, so error reports still say what ran.
pub fn failed_echo(name: &str, args: BTreeMap<String, Value>) -> CommandEcho {
    CommandEcho {
        name: name.into(),
        args,
    }
}
