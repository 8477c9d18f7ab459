//! Claim checks. Each registered claim generates its instances, computes
//! fixing numbers and metric dimensions by exhaustive search, and compares
//! them with the stated value or inequality. A failed comparison becomes a
//! `fail` report carrying the offending graph and function.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::OnceLock;
use std::time::Instant;

use functigraph_core::enumerate::{connected_graphs, labeled_trees, tree_from_prufer};
use functigraph_core::fixing::fixing_number_with;
use functigraph_core::functigraph::Construction;
use functigraph_core::graph::family;
use functigraph_core::predict::{
    equality_complete_graphs, kn_bounds, predicted_fix_kn, predicted_fix_kn_minus_matching, ImageKind,
};
use functigraph_core::resolving::metric_dimension_with;
use functigraph_core::{build_functigraph, Caps, Error, Graph, PreimageProfile, Result, VertexFunction};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    /// Host graph in the text edge-list format.
    pub graph: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub function: Option<Vec<usize>>,
}

impl Counterexample {
    fn new(g: &Graph, f: Option<&VertexFunction>) -> Counterexample {
        Counterexample { graph: g.to_string(), function: f.map(|f| f.images().to_vec()) }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClaimReport {
    pub claim: &'static str,
    pub instance: String,
    pub predicted: Value,
    pub computed: Value,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub runtime_ms: Option<f64>,
}

impl ClaimReport {
    fn judged(
        claim: &'static str,
        instance: String,
        predicted: Value,
        computed: Value,
        ok: bool,
        counterexample: impl FnOnce() -> Counterexample,
    ) -> ClaimReport {
        ClaimReport {
            claim,
            instance,
            predicted,
            computed,
            verdict: if ok { Verdict::Pass } else { Verdict::Fail },
            reason: None,
            counterexample: (!ok).then(counterexample),
            runtime_ms: None,
        }
    }

    fn skipped(claim: &'static str, instance: String, reason: String) -> ClaimReport {
        ClaimReport {
            claim,
            instance,
            predicted: Value::Null,
            computed: Value::Null,
            verdict: Verdict::Skipped,
            reason: Some(reason),
            counterexample: None,
            runtime_ms: None,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
}

impl Summary {
    pub fn of(reports: &[ClaimReport]) -> Summary {
        let mut s = Summary::default();
        for r in reports {
            match r.verdict {
                Verdict::Pass => s.pass += 1,
                Verdict::Fail => s.fail += 1,
                Verdict::Skipped => s.skipped += 1,
            }
        }
        s
    }
}

#[derive(Debug, Clone)]
pub struct SuiteParams {
    /// Largest host order for the sweeps that scale with `n`.
    pub max_n: usize,
    pub seed: u64,
    /// Random `(tree, g)` pairs per order for the sampled tree checks.
    pub samples: usize,
    pub timings: bool,
    pub caps: Caps,
}

impl Default for SuiteParams {
    fn default() -> SuiteParams {
        SuiteParams { max_n: 7, seed: 0, samples: 200, timings: false, caps: Caps::default() }
    }
}

pub struct ClaimInfo {
    pub id: &'static str,
    pub suite: &'static str,
    pub statement: &'static str,
}

pub const CLAIMS: &[ClaimInfo] = &[
    ClaimInfo { id: "P2.5-sharp-lower", suite: "prop-2.5", statement: "F_{P_3} under g = [0,0,2] is rigid" },
    ClaimInfo { id: "P2.5-sharp-upper", suite: "prop-2.5", statement: "fix(F_{K_n}) = 2n-3 for constant g" },
    ClaimInfo { id: "P2.5", suite: "ambient", statement: "0 <= fix(F_G) <= 2n-3" },
    ClaimInfo { id: "P2.6", suite: "ambient", statement: "1 <= fix(G) + fix(F_G) <= 3n-4" },
    ClaimInfo { id: "T-beta", suite: "ambient", statement: "2 <= beta(F_G) <= 2n-3" },
    ClaimInfo { id: "fix-le-beta", suite: "ambient", statement: "fix(F_G) <= beta(F_G)" },
    ClaimInfo { id: "L-realize", suite: "lemmas", statement: "fix(G) = t = fix(F_G)" },
    ClaimInfo { id: "L-succ", suite: "lemmas", statement: "fix(G) = t, fix(F_G) = t+1" },
    ClaimInfo { id: "L-sum", suite: "lemmas", statement: "fix(G) + fix(F_G) = t" },
    ClaimInfo { id: "L-diff", suite: "lemmas", statement: "fix(G) - fix(F_G) = t" },
    ClaimInfo { id: "L-diff-rev", suite: "lemmas", statement: "fix(F_G) - fix(G) = t" },
    ClaimInfo { id: "T3.1", suite: "thm-3.1", statement: "fix(F_{K_n}) from the preimage profile" },
    ClaimInfo { id: "C-f11a", suite: "thm-3.1", statement: "profile (n-s, 2, 1^(s-2)) gives 2n-(s+4)" },
    ClaimInfo { id: "C-f11b", suite: "thm-3.1", statement: "profile (n-s+1, 1^(s-1)) gives 2n-(s+3)" },
    ClaimInfo { id: "C-f12", suite: "thm-3.1", statement: "profile ((n/s)^s) gives 2(n-s)-1" },
    ClaimInfo { id: "P-equality", suite: "equality", statement: "fix(K_m) = fix(F) is reachable with s images iff s+2 <= m <= 2s" },
    ClaimInfo { id: "P-equality-menu", suite: "equality", statement: "the listed functions reach fix(K_m) = fix(F)" },
    ClaimInfo { id: "R-s-count", suite: "equality", statement: "count of functions with s images reaching equality" },
    ClaimInfo { id: "K4-remark", suite: "k4", statement: "every g on K_4 gives fix(F) = 3" },
    ClaimInfo { id: "K4-remark-restricted", suite: "k4", statement: "every g with 2 <= s <= n-2 gives fix(F_{K_n}) = n-1 iff n = 4" },
    ClaimInfo { id: "T-matching", suite: "matching", statement: "fix(F_{K_n - iK_2}) for constant g" },
    ClaimInfo { id: "C-sandwich", suite: "matching", statement: "fix(K_n) <= fix(F_{K_n - iK_2}) <= fix(F_{K_n})" },
    ClaimInfo { id: "T-tree-char", suite: "trees", statement: "fix(F_T) in {2|T|-2, 2|T|-3} iff T = P_2" },
    ClaimInfo { id: "P-tree-bound", suite: "trees", statement: "fix(F_T) <= 2 fix(T)" },
    ClaimInfo { id: "C-path", suite: "trees", statement: "fix(F_{P_n}) <= 2" },
    ClaimInfo { id: "T-join", suite: "joins", statement: "fix(G_1 + G_2) >= fix(G_1) + fix(G_2)" },
    ClaimInfo { id: "P-join-const", suite: "joins", statement: "fix(F_{G_1+G_2}) in {2 fix(G_1+G_2) - 1, 2 fix(G_1+G_2)} for constant g" },
];

pub const SUITES: &[&str] =
    &["prop-2.5", "ambient", "lemmas", "thm-3.1", "equality", "k4", "matching", "trees", "joins"];

/// Claim ids selected by `name`: `all`, a suite name, or a single claim id.
pub fn claims_for(name: &str) -> Result<Vec<&'static str>> {
    if name == "all" {
        return Ok(CLAIMS.iter().map(|c| c.id).collect());
    }
    let in_suite: Vec<_> = CLAIMS.iter().filter(|c| c.suite == name).map(|c| c.id).collect();
    if !in_suite.is_empty() {
        return Ok(in_suite);
    }
    CLAIMS
        .iter()
        .find(|c| c.id == name)
        .map(|c| vec![c.id])
        .ok_or_else(|| Error::UnknownTag(name.to_string()))
}

pub fn check_claim(claim: &str, params: &SuiteParams) -> Result<Vec<ClaimReport>> {
    Checker::new(params.clone()).check(claim)
}

/// Runs every claim selected by `name`, in registry order.
pub fn run_suite(name: &str, params: &SuiteParams) -> Result<Vec<ClaimReport>> {
    let checker = Checker::new(params.clone());
    let mut out = Vec::new();
    for id in claims_for(name)? {
        out.extend(checker.check(id)?);
    }
    Ok(out)
}

/// Every function on a graph of order `<= 5` with its fixing number and,
/// for connected graphs, the metric dimension of its functigraph.
#[derive(Debug, Clone, Serialize)]
pub struct SweepReport {
    pub n: usize,
    pub functions: usize,
    pub fix_graph: usize,
    pub fix_distribution: BTreeMap<usize, usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta_distribution: Option<BTreeMap<usize, usize>>,
    pub fix_min: Extremal,
    pub fix_max: Extremal,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta_min: Option<Extremal>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta_max: Option<Extremal>,
    /// First function with `fix(F_G) > beta(F_G)`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fix_exceeds_beta: Option<Vec<usize>>,
    #[serde(skip)]
    pub fix: Vec<usize>,
    #[serde(skip)]
    pub beta: Option<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Extremal {
    pub value: usize,
    /// First function, in enumeration order, attaining the value.
    pub function: Vec<usize>,
}

pub const SWEEP_MAX_ORDER: usize = 5;

pub fn enumerate_all_functions(g: &Graph, caps: &Caps) -> Result<SweepReport> {
    sweep(g, caps, g.is_connected())
}

fn sweep(g: &Graph, caps: &Caps, with_beta: bool) -> Result<SweepReport> {
    let n = g.order();
    if n > SWEEP_MAX_ORDER {
        return Err(Error::CapExceeded {
            what: "function sweep order",
            limit: SWEEP_MAX_ORDER as u128,
            partial_generators: Vec::new(),
        });
    }
    let functions: Vec<VertexFunction> = VertexFunction::all(n).collect();
    let values: Vec<(usize, Option<usize>)> = functions
        .par_iter()
        .map(|f| {
            let fg = build_functigraph(g, f)?;
            let fix = fixing_number_with(&fg, caps)?.fix;
            let beta = if with_beta { Some(metric_dimension_with(&fg, caps)?.beta) } else { None };
            Ok((fix, beta))
        })
        .collect::<Result<_>>()?;
    let fix: Vec<usize> = values.iter().map(|v| v.0).collect();
    let beta: Option<Vec<usize>> = with_beta.then(|| values.iter().map(|v| v.1.unwrap()).collect());
    let extremal = |vals: &[usize], pick_max: bool| {
        let best = if pick_max { vals.iter().max() } else { vals.iter().min() };
        let best = *best.expect("at least one function");
        let k = vals.iter().position(|&v| v == best).unwrap();
        Extremal { value: best, function: functions[k].images().to_vec() }
    };
    let histogram = |vals: &[usize]| {
        let mut h = BTreeMap::new();
        for &v in vals {
            *h.entry(v).or_insert(0) += 1;
        }
        h
    };
    let fix_exceeds_beta = beta.as_ref().and_then(|b| {
        (0..fix.len()).find(|&k| fix[k] > b[k]).map(|k| functions[k].images().to_vec())
    });
    Ok(SweepReport {
        n,
        functions: functions.len(),
        fix_graph: fixing_number_with(g, caps)?.fix,
        fix_distribution: histogram(&fix),
        beta_distribution: beta.as_deref().map(histogram),
        fix_min: extremal(&fix, false),
        fix_max: extremal(&fix, true),
        beta_min: beta.as_deref().map(|b| extremal(b, false)),
        beta_max: beta.as_deref().map(|b| extremal(b, true)),
        fix_exceeds_beta,
        fix,
        beta,
    })
}

struct Labeled {
    label: String,
    graph: Graph,
}

fn edge_label(g: &Graph) -> String {
    let edges: Vec<String> = g.edges().iter().map(|(a, b)| format!("{a}-{b}")).collect();
    format!("n={} edges={}", g.order(), edges.join(","))
}

fn function_label(f: &VertexFunction) -> String {
    let images: Vec<String> = f.images().iter().map(ToString::to_string).collect();
    format!("[{}]", images.join(","))
}

/// `(n, parts)` for every function on `n` points with `1 < s < n`.
fn kn_profiles(lo: usize, hi: usize) -> Vec<(usize, PreimageProfile)> {
    (lo..=hi)
        .flat_map(|n| (2..n).flat_map(move |s| PreimageProfile::all_with_parts(n, s)).map(move |p| (n, p)))
        .collect()
}

/// Number of functions on `n` points with the given profile.
fn functions_with_profile(n: usize, p: &PreimageProfile) -> u128 {
    let fact = |k: usize| (1..=k as u128).product::<u128>();
    let s = p.image_size();
    let mut multiplicity: BTreeMap<usize, usize> = BTreeMap::new();
    for &part in p.parts() {
        *multiplicity.entry(part).or_insert(0) += 1;
    }
    let blocks = fact(n)
        / p.parts().iter().map(|&q| fact(q)).product::<u128>()
        / multiplicity.values().map(|&m| fact(m)).product::<u128>();
    blocks * fact(n) / fact(n - s)
}

struct TreeSweep {
    graph: Graph,
    fix_tree: usize,
    functions: Vec<VertexFunction>,
    fix: Vec<usize>,
}

pub struct Checker {
    params: SuiteParams,
    ambient: OnceLock<Result<Vec<(Labeled, SweepReport)>>>,
    trees: OnceLock<Result<Vec<TreeSweep>>>,
}

impl Checker {
    pub fn new(params: SuiteParams) -> Checker {
        Checker { params, ambient: OnceLock::new(), trees: OnceLock::new() }
    }

    pub fn check(&self, claim: &str) -> Result<Vec<ClaimReport>> {
        let claim = CLAIMS
            .iter()
            .find(|c| c.id == claim)
            .ok_or_else(|| Error::UnknownTag(claim.to_string()))?
            .id;
        match claim {
            "P2.5-sharp-lower" => self.sharp_lower(claim),
            "P2.5-sharp-upper" => self.sharp_upper(claim),
            "P2.5" | "P2.6" | "T-beta" | "fix-le-beta" => self.ambient_claim(claim),
            "L-realize" | "L-succ" | "L-sum" | "L-diff" | "L-diff-rev" => self.lemma(claim),
            "T3.1" => self.kn_sweep(claim),
            "C-f11a" | "C-f11b" | "C-f12" => self.corollary(claim),
            "P-equality" => self.equality(claim),
            "P-equality-menu" => self.equality_menu(claim),
            "R-s-count" => self.s_count(claim),
            "K4-remark" => self.k4_remark(claim),
            "K4-remark-restricted" => self.k4_restricted(claim),
            "T-matching" | "C-sandwich" => self.matching(claim),
            "T-tree-char" | "P-tree-bound" => self.tree_claim(claim),
            "C-path" => self.path_bound(claim),
            "T-join" | "P-join-const" => self.joins(claim),
            _ => unreachable!("registered claim without a checker"),
        }
    }

    fn fix(&self, g: &Graph) -> Result<usize> {
        Ok(fixing_number_with(g, &self.params.caps)?.fix)
    }

    fn fix_f(&self, g: &Graph, f: &VertexFunction) -> Result<usize> {
        self.fix(&build_functigraph(g, f)?)
    }

    /// Runs one instance, turning a cap overrun into a skipped report and
    /// attaching the runtime when requested.
    fn guard(
        &self,
        claim: &'static str,
        instance: String,
        run: impl FnOnce(String) -> Result<ClaimReport>,
    ) -> Result<ClaimReport> {
        let start = Instant::now();
        let mut report = match run(instance.clone()) {
            Err(e @ Error::CapExceeded { .. }) => ClaimReport::skipped(claim, instance, e.to_string()),
            other => other?,
        };
        if self.params.timings {
            report.runtime_ms = Some(start.elapsed().as_secs_f64() * 1e3);
        }
        Ok(report)
    }

    fn sharp_lower(&self, claim: &'static str) -> Result<Vec<ClaimReport>> {
        let g = family("path:3")?;
        let f = VertexFunction::new(3, vec![0, 0, 2])?;
        let r = self.guard(claim, format!("path:3 g={}", function_label(&f)), |inst| {
            let fix = self.fix_f(&g, &f)?;
            Ok(ClaimReport::judged(claim, inst, json!(0), json!(fix), fix == 0, || {
                Counterexample::new(&g, Some(&f))
            }))
        })?;
        Ok(vec![r])
    }

    fn sharp_upper(&self, claim: &'static str) -> Result<Vec<ClaimReport>> {
        (3..=self.params.max_n.max(3))
            .map(|n| {
                self.guard(claim, format!("complete:{n} g=constant 0"), |inst| {
                    let c = Construction::CompleteConstant(n);
                    let (g, f) = (c.graph()?, c.function()?);
                    let fix = self.fix_f(&g, &f)?;
                    let want = 2 * n - 3;
                    Ok(ClaimReport::judged(claim, inst, json!(want), json!(fix), fix == want, || {
                        Counterexample::new(&g, Some(&f))
                    }))
                })
            })
            .collect()
    }

    /// Every connected graph of order 3 and 4, plus the trees, `K_5` and
    /// `C_5` at order 5 (bounded by `max_n`).
    fn ambient_graphs(&self) -> Result<Vec<Labeled>> {
        let top = self.params.max_n.min(SWEEP_MAX_ORDER);
        let mut out = Vec::new();
        for n in 3..=top.min(4) {
            for g in connected_graphs(n)? {
                out.push(Labeled { label: edge_label(&g), graph: g });
            }
        }
        if top >= 5 {
            for g in labeled_trees(5)? {
                out.push(Labeled { label: edge_label(&g), graph: g });
            }
            for spec in ["complete:5", "cycle:5"] {
                out.push(Labeled { label: spec.to_string(), graph: family(spec)? });
            }
        }
        Ok(out)
    }

    fn ambient(&self) -> Result<&Vec<(Labeled, SweepReport)>> {
        self.ambient
            .get_or_init(|| {
                self.ambient_graphs()?
                    .into_par_iter()
                    .map(|l| {
                        let sweep = enumerate_all_functions(&l.graph, &self.params.caps)?;
                        Ok((l, sweep))
                    })
                    .collect()
            })
            .as_ref()
            .map_err(Clone::clone)
    }

    fn ambient_claim(&self, claim: &'static str) -> Result<Vec<ClaimReport>> {
        let mut out = Vec::new();
        for (l, s) in self.ambient()? {
            let n = s.n;
            let inst = format!("{} all {} functions", l.label, s.functions);
            let cx = |images: &[usize]| {
                let f = VertexFunction::new(n, images.to_vec()).expect("swept function");
                Counterexample::new(&l.graph, Some(&f))
            };
            let (beta_min, beta_max) = (s.beta_min.as_ref().unwrap(), s.beta_max.as_ref().unwrap());
            let report = match claim {
                "P2.5" => {
                    let ok = s.fix_max.value <= 2 * n - 3;
                    ClaimReport::judged(
                        claim,
                        inst,
                        json!([0, 2 * n - 3]),
                        json!([s.fix_min.value, s.fix_max.value]),
                        ok,
                        || cx(&s.fix_max.function),
                    )
                }
                "P2.6" => {
                    let (lo, hi) = (s.fix_graph + s.fix_min.value, s.fix_graph + s.fix_max.value);
                    let ok = lo >= 1 && hi <= 3 * n - 4;
                    ClaimReport::judged(claim, inst, json!([1, 3 * n - 4]), json!([lo, hi]), ok, || {
                        cx(if lo < 1 { &s.fix_min.function } else { &s.fix_max.function })
                    })
                }
                "T-beta" => {
                    let ok = beta_min.value >= 2 && beta_max.value <= 2 * n - 3;
                    ClaimReport::judged(
                        claim,
                        inst,
                        json!([2, 2 * n - 3]),
                        json!([beta_min.value, beta_max.value]),
                        ok,
                        || cx(if beta_min.value < 2 { &beta_min.function } else { &beta_max.function }),
                    )
                }
                _ => {
                    let beta = s.beta.as_ref().unwrap();
                    let violations = (0..s.fix.len()).filter(|&k| s.fix[k] > beta[k]).count();
                    ClaimReport::judged(claim, inst, json!(0), json!(violations), violations == 0, || {
                        cx(s.fix_exceeds_beta.as_ref().unwrap())
                    })
                }
            };
            out.push(report);
        }
        Ok(out)
    }

    fn lemma(&self, claim: &'static str) -> Result<Vec<ClaimReport>> {
        (2..=4)
            .map(|t| {
                let c = match claim {
                    "L-realize" => Construction::EqualFix(t),
                    "L-succ" => Construction::SuccessorFix(t),
                    "L-sum" => Construction::SumFix(t),
                    "L-diff" => Construction::DifferenceFix(t),
                    _ => Construction::ReverseDifferenceFix(t),
                };
                let (g, f) = match (c.graph(), c.function()) {
                    (Ok(g), Ok(f)) => (g, f),
                    (Err(e), _) | (_, Err(e)) => {
                        return Ok(ClaimReport::skipped(claim, format!("{c} t={t}"), e.to_string()));
                    }
                };
                self.guard(claim, format!("{c} on {}", c.host()), |inst| {
                    let (fg, ff) = (self.fix(&g)?, self.fix_f(&g, &f)?);
                    let (predicted, ok) = match claim {
                        "L-realize" => (json!({"fix_G": t, "fix_F": t}), fg == t && ff == t),
                        "L-succ" => (json!({"fix_G": t, "fix_F": t + 1}), fg == t && ff == t + 1),
                        "L-sum" => (json!({"fix_G + fix_F": t}), fg + ff == t),
                        "L-diff" => (json!({"fix_G - fix_F": t}), fg == ff + t),
                        _ => (json!({"fix_F - fix_G": t}), ff == fg + t),
                    };
                    let computed = json!({"fix_G": fg, "fix_F": ff});
                    Ok(ClaimReport::judged(claim, inst, predicted, computed, ok, || {
                        Counterexample::new(&g, Some(&f))
                    }))
                })
            })
            .collect()
    }

    fn kn_instance(
        &self,
        claim: &'static str,
        n: usize,
        p: &PreimageProfile,
        predicted: usize,
    ) -> Result<ClaimReport> {
        self.guard(claim, format!("complete:{n} profile=({p})"), |inst| {
            let g = family(&format!("complete:{n}"))?;
            let f = p.realize();
            let fix = self.fix_f(&g, &f)?;
            let (lo, hi) = kn_bounds(n, p.image_size());
            let ok = fix == predicted && (lo..=hi).contains(&fix);
            let want = json!({"fix": predicted, "bounds": [lo, hi]});
            Ok(ClaimReport::judged(claim, inst, want, json!(fix), ok, || Counterexample::new(&g, Some(&f))))
        })
    }

    fn kn_sweep(&self, claim: &'static str) -> Result<Vec<ClaimReport>> {
        kn_profiles(4, self.params.max_n)
            .par_iter()
            .map(|(n, p)| self.kn_instance(claim, *n, p, predicted_fix_kn(*n, p)?))
            .collect()
    }

    fn corollary(&self, claim: &'static str) -> Result<Vec<ClaimReport>> {
        let mut cases = Vec::new();
        for n in 4..=self.params.max_n {
            for s in 3..n {
                let parts: Option<(Vec<usize>, usize)> = match claim {
                    "C-f11a" if n - s >= 2 => {
                        let mut parts = vec![n - s, 2];
                        parts.extend(std::iter::repeat_n(1, s - 2));
                        Some((parts, 2 * n - (s + 4)))
                    }
                    "C-f11b" => {
                        let mut parts = vec![n - s + 1];
                        parts.extend(std::iter::repeat_n(1, s - 1));
                        Some((parts, 2 * n - (s + 3)))
                    }
                    "C-f12" if n % s == 0 => Some((vec![n / s; s], 2 * (n - s) - 1)),
                    _ => None,
                };
                if let Some((parts, want)) = parts {
                    cases.push((n, PreimageProfile::new(parts)?, want));
                }
            }
        }
        cases.par_iter().map(|(n, p, want)| self.kn_instance(claim, *n, p, *want)).collect()
    }

    fn equality(&self, claim: &'static str) -> Result<Vec<ClaimReport>> {
        const MAX_ORDER: usize = 8;
        (2..=4)
            .map(|s| {
                self.guard(claim, format!("s={s} orders {}..={MAX_ORDER}", s + 1), |inst| {
                    let predicted: Vec<usize> =
                        equality_complete_graphs(s)?.into_iter().filter(|&m| m <= MAX_ORDER).collect();
                    let mut computed = Vec::new();
                    let mut witnesses = BTreeMap::new();
                    for m in s + 1..=MAX_ORDER {
                        let g = family(&format!("complete:{m}"))?;
                        let hit = PreimageProfile::all_with_parts(m, s)
                            .into_par_iter()
                            .map(|p| Ok((self.fix_f(&g, &p.realize())? == m - 1).then_some(p)))
                            .collect::<Result<Vec<_>>>()?
                            .into_iter()
                            .flatten()
                            .next();
                        if let Some(p) = hit {
                            computed.push(m);
                            witnesses.insert(m, p);
                        }
                    }
                    let ok = computed == predicted;
                    let predicted_set: BTreeSet<usize> = predicted.iter().copied().collect();
                    let computed_json = json!({
                        "orders": computed,
                        "witness_profiles": witnesses.iter().map(|(m, p)| (m.to_string(), p.to_string())).collect::<BTreeMap<_, _>>(),
                    });
                    Ok(ClaimReport::judged(claim, inst, json!(predicted), computed_json, ok, || {
                        let m = (s + 1..=MAX_ORDER)
                            .find(|m| predicted_set.contains(m) != witnesses.contains_key(m))
                            .expect("sets differ");
                        let g = family(&format!("complete:{m}")).expect("complete graph");
                        Counterexample::new(&g, witnesses.get(&m).map(|p| p.realize()).as_ref())
                    }))
                })
            })
            .collect()
    }

    fn equality_menu(&self, claim: &'static str) -> Result<Vec<ClaimReport>> {
        let mut out = Vec::new();
        for s in 2..=4 {
            for order in equality_complete_graphs(s)? {
                let variants: &[usize] = if order == 2 * s { &[1, 2] } else { &[1] };
                for &variant in variants {
                    let c = Construction::CompleteEquality { s, order, variant };
                    out.push(self.guard(claim, c.to_string(), |inst| {
                        let (g, f) = (c.graph()?, c.function()?);
                        let (fg, ff) = (self.fix(&g)?, self.fix_f(&g, &f)?);
                        let ok = fg == ff && f.image_size() == s;
                        let computed = json!({"fix_G": fg, "fix_F": ff, "image_size": f.image_size(), "images": f.images()});
                        Ok(ClaimReport::judged(claim, inst, json!({"fix_F": order - 1}), computed, ok, || {
                            Counterexample::new(&g, Some(&f))
                        }))
                    })?);
                }
            }
        }
        Ok(out)
    }

    fn s_count(&self, claim: &'static str) -> Result<Vec<ClaimReport>> {
        let mut out = Vec::new();
        for n in 4..=self.params.max_n {
            let g = family(&format!("complete:{n}"))?;
            for s in 2..=n - 2 {
                let hits = PreimageProfile::all_with_parts(n, s)
                    .into_par_iter()
                    .map(|p| Ok((self.fix_f(&g, &p.realize())? == n - 1).then_some(p)))
                    .collect::<Result<Vec<_>>>()?;
                let hits: Vec<PreimageProfile> = hits.into_iter().flatten().collect();
                let functions: u128 = hits.iter().map(|p| functions_with_profile(n, p)).sum();
                out.push(ClaimReport {
                    computed: json!({
                        "profiles": hits.len(),
                        "functions": functions,
                        "which": hits.iter().map(ToString::to_string).collect::<Vec<_>>(),
                    }),
                    predicted: json!(s),
                    ..ClaimReport::skipped(
                        claim,
                        format!("complete:{n} s={s}"),
                        "counting experiment; the counted objects are ambiguous, so no verdict".into(),
                    )
                });
            }
        }
        Ok(out)
    }

    fn k4_remark(&self, claim: &'static str) -> Result<Vec<ClaimReport>> {
        let g = family("complete:4")?;
        let r = self.guard(claim, "complete:4 all 256 functions".into(), |inst| {
            let s = sweep(&g, &self.params.caps, false)?;
            let bad = s.fix.iter().position(|&v| v != 3);
            let functions: Vec<VertexFunction> = VertexFunction::all(4).collect();
            Ok(ClaimReport::judged(claim, inst, json!({"3": 256}), json!(s.fix_distribution), bad.is_none(), || {
                Counterexample::new(&g, Some(&functions[bad.unwrap()]))
            }))
        })?;
        Ok(vec![r])
    }

    fn k4_restricted(&self, claim: &'static str) -> Result<Vec<ClaimReport>> {
        (4..=self.params.max_n.min(7))
            .map(|n| {
                self.guard(claim, format!("complete:{n} profiles with 2 <= s <= {}", n - 2), |inst| {
                    let g = family(&format!("complete:{n}"))?;
                    let profiles: Vec<PreimageProfile> =
                        (2..=n - 2).flat_map(|s| PreimageProfile::all_with_parts(n, s)).collect();
                    let fixes = profiles
                        .par_iter()
                        .map(|p| self.fix_f(&g, &p.realize()))
                        .collect::<Result<Vec<_>>>()?;
                    let miss = fixes.iter().position(|&v| v != n - 1);
                    let all_equal = miss.is_none();
                    let computed = json!({
                        "all_equal": all_equal,
                        "first_miss": miss.map(|k| json!({"profile": profiles[k].to_string(), "fix_F": fixes[k]})),
                    });
                    Ok(ClaimReport::judged(claim, inst, json!({"all_equal": n == 4}), computed, all_equal == (n == 4), || {
                        Counterexample::new(&g, miss.map(|k| profiles[k].realize()).as_ref())
                    }))
                })
            })
            .collect()
    }

    fn matching(&self, claim: &'static str) -> Result<Vec<ClaimReport>> {
        let mut cases = Vec::new();
        for n in 4..=self.params.max_n {
            for i in 1..=n / 2 {
                for kind in [ImageKind::Twin, ImageKind::Saturated] {
                    if let Some(target) = kind.target(n, i) {
                        cases.push((n, i, kind, target));
                    }
                }
            }
        }
        cases
            .par_iter()
            .map(|&(n, i, kind, target)| {
                let inst = format!("complete-minus-matching:{n},{i} g=constant {target} ({})", kind.name());
                self.guard(claim, inst, |inst| {
                    let gi = family(&format!("complete-minus-matching:{n},{i}"))?;
                    let f = VertexFunction::constant(n, target)?;
                    let mid = self.fix_f(&gi, &f)?;
                    let cx = || Counterexample::new(&gi, Some(&f));
                    if claim == "T-matching" {
                        let want = predicted_fix_kn_minus_matching(n, i, kind)?;
                        return Ok(ClaimReport::judged(claim, inst, json!(want), json!(mid), mid == want, cx));
                    }
                    let k = family(&format!("complete:{n}"))?;
                    let lower = self.fix(&k)?;
                    let upper = self.fix_f(&k, &VertexFunction::constant(n, 0)?)?;
                    let ok = lower <= mid && mid <= upper;
                    let computed = json!({"fix_G": lower, "fix_F_Gi": mid, "fix_F_G": upper});
                    Ok(ClaimReport::judged(claim, inst, json!("fix_G <= fix_F_Gi <= fix_F_G"), computed, ok, cx))
                })
            })
            .collect()
    }

    fn tree_sweeps(&self) -> Result<&Vec<TreeSweep>> {
        self.trees
            .get_or_init(|| {
                let mut out = Vec::new();
                for n in 2..=self.params.max_n.min(SWEEP_MAX_ORDER) {
                    let functions: Vec<VertexFunction> = VertexFunction::all(n).collect();
                    for t in labeled_trees(n)? {
                        let s = sweep(&t, &self.params.caps, false)?;
                        out.push(TreeSweep {
                            fix_tree: s.fix_graph,
                            fix: s.fix,
                            functions: functions.clone(),
                            graph: t,
                        });
                    }
                }
                Ok(out)
            })
            .as_ref()
            .map_err(Clone::clone)
    }

    fn sampled_trees(&self, n: usize, path_only: bool) -> Vec<(Graph, VertexFunction)> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.params.seed ^ (n as u64) << 32);
        (0..self.params.samples)
            .map(|_| {
                let t = if path_only {
                    family(&format!("path:{n}")).expect("path")
                } else {
                    let code: Vec<usize> = (0..n - 2).map(|_| rng.random_range(0..n)).collect();
                    tree_from_prufer(n, &code).expect("valid code")
                };
                let images = (0..n).map(|_| rng.random_range(0..n)).collect();
                (t, VertexFunction::new(n, images).expect("in range"))
            })
            .collect()
    }

    /// One aggregate report over random `(T, g)` pairs of order `n`, judged
    /// by `bound(T)`, the largest allowed `fix(F_T)`.
    fn sampled_bound(
        &self,
        claim: &'static str,
        n: usize,
        path_only: bool,
        bound: impl Fn(&Graph) -> Result<usize> + Sync,
    ) -> Result<ClaimReport> {
        let what = if path_only { "path" } else { "random trees" };
        let inst = format!("n={n} {} sampled {what} with random g, seed {}", self.params.samples, self.params.seed);
        self.guard(claim, inst, |inst| {
            let pairs = self.sampled_trees(n, path_only);
            let results = pairs
                .par_iter()
                .map(|(t, f)| Ok((self.fix_f(t, f)?, bound(t)?)))
                .collect::<Result<Vec<_>>>()?;
            let first = results.iter().position(|(v, b)| v > b);
            let violations = results.iter().filter(|(v, b)| v > b).count();
            let max = results.iter().map(|r| r.0).max().unwrap_or(0);
            let computed = json!({"violations": violations, "max_fix_F": max});
            Ok(ClaimReport::judged(claim, inst, json!({"violations": 0}), computed, first.is_none(), || {
                let (t, f) = &pairs[first.unwrap()];
                Counterexample::new(t, Some(f))
            }))
        })
    }

    fn tree_claim(&self, claim: &'static str) -> Result<Vec<ClaimReport>> {
        let mut out = Vec::new();
        for ts in self.tree_sweeps()? {
            let n = ts.graph.order();
            let inst = format!("tree {} all {} functions", edge_label(&ts.graph), ts.fix.len());
            let report = if claim == "T-tree-char" {
                let hit = ts.fix.iter().position(|&v| v + 2 == 2 * n || v + 3 == 2 * n);
                let is_p2 = n == 2;
                let computed = json!({"occurs": hit.is_some(), "fix_F_range": [ts.fix.iter().min(), ts.fix.iter().max()]});
                ClaimReport::judged(claim, inst, json!({"occurs": is_p2}), computed, hit.is_some() == is_p2, || {
                    Counterexample::new(&ts.graph, hit.map(|k| &ts.functions[k]))
                })
            } else {
                let bound = 2 * ts.fix_tree;
                let worst = (0..ts.fix.len()).max_by_key(|&k| (ts.fix[k], std::cmp::Reverse(k))).unwrap();
                let computed = json!({"fix_T": ts.fix_tree, "max_fix_F": ts.fix[worst]});
                ClaimReport::judged(claim, inst, json!({"max_fix_F_at_most": bound}), computed, ts.fix[worst] <= bound, || {
                    Counterexample::new(&ts.graph, Some(&ts.functions[worst]))
                })
            };
            out.push(report);
        }
        if claim == "P-tree-bound" {
            for n in SWEEP_MAX_ORDER + 1..=self.params.max_n.min(7) {
                out.push(self.sampled_bound(claim, n, false, |t| Ok(2 * self.fix(t)?))?);
            }
        }
        Ok(out)
    }

    fn path_bound(&self, claim: &'static str) -> Result<Vec<ClaimReport>> {
        let mut out = Vec::new();
        for n in 2..=self.params.max_n.min(SWEEP_MAX_ORDER) {
            out.push(self.guard(claim, format!("path:{n} all functions"), |inst| {
                let g = family(&format!("path:{n}"))?;
                let s = sweep(&g, &self.params.caps, false)?;
                let ok = s.fix_max.value <= 2;
                let computed = json!({"max_fix_F": s.fix_max.value, "distribution": s.fix_distribution});
                Ok(ClaimReport::judged(claim, inst, json!({"max_fix_F_at_most": 2}), computed, ok, || {
                    let f = VertexFunction::new(n, s.fix_max.function.clone()).expect("swept function");
                    Counterexample::new(&g, Some(&f))
                }))
            })?);
        }
        for n in SWEEP_MAX_ORDER + 1..=self.params.max_n.min(7) {
            out.push(self.sampled_bound(claim, n, true, |_| Ok(2))?);
        }
        Ok(out)
    }

    fn joins(&self, claim: &'static str) -> Result<Vec<ClaimReport>> {
        const PARTS: [&str; 4] = ["path:2", "path:3", "complete:3", "star:3"];
        let mut out = Vec::new();
        for (i, a) in PARTS.iter().enumerate() {
            for b in &PARTS[i..] {
                let spec = format!("join({a},{b})");
                let g = family(&spec)?;
                if claim == "T-join" {
                    out.push(self.guard(claim, spec.clone(), |inst| {
                        let sum = self.fix(&family(a)?)? + self.fix(&family(b)?)?;
                        let fj = self.fix(&g)?;
                        Ok(ClaimReport::judged(claim, inst, json!({"at_least": sum}), json!(fj), fj >= sum, || {
                            Counterexample::new(&g, None)
                        }))
                    })?);
                    continue;
                }
                let r = fixing_number_with(&g, &self.params.caps)?;
                for target in 0..g.order() {
                    let inside = if r.witness.contains(&target) { "in" } else { "not in" };
                    let inst = format!("{spec} g=constant {target} (target {inside} the minimum fixing set)");
                    out.push(self.guard(claim, inst, |inst| {
                        let f = VertexFunction::constant(g.order(), target)?;
                        let ff = self.fix_f(&g, &f)?;
                        let ok = ff + 1 == 2 * r.fix || ff == 2 * r.fix;
                        let want = json!([2 * r.fix - 1, 2 * r.fix]);
                        Ok(ClaimReport::judged(claim, inst, want, json!(ff), ok, || Counterexample::new(&g, Some(&f))))
                    })?);
                }
            }
        }
        Ok(out)
    }
}
