//! Independent cross-checks of the decomposition's countable consequences.
//!
//! Each check recomputes a quantity along a second path (binomial counts,
//! the Burnside double sum over pairs of elements, the rank of equivariant
//! `K₀` of projective space, Gram matrices of generators) and compares it
//! with the assembled decomposition.

use std::fmt;
use std::time::Instant;

use num_traits::{One, Signed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::euler::{report_gram, GramMatrix};
use crate::group::{span, ActionSpec, Character, SpaceKind};
use crate::inertia::CoarseType;
use crate::loci::fixed_chi_c;
use crate::mutlat::apply_script;
use crate::presets::Preset;
use crate::sod::{assemble, msodc_plan, SodReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

impl fmt::Display for CheckStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CheckStatus::Pass => "PASS",
            CheckStatus::Fail => "FAIL",
            CheckStatus::Skipped => "SKIP",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub status: CheckStatus,
    pub expected: String,
    pub actual: String,
    pub context: String,
}

impl CheckResult {
    fn compare(name: impl Into<String>, expected: impl fmt::Display, actual: impl fmt::Display, ok: bool, context: impl Into<String>) -> Self {
        CheckResult {
            name: name.into(),
            status: if ok { CheckStatus::Pass } else { CheckStatus::Fail },
            expected: expected.to_string(),
            actual: actual.to_string(),
            context: context.into(),
        }
    }

    fn skipped(name: impl Into<String>, reason: impl Into<String>) -> Self {
        CheckResult {
            name: name.into(),
            status: CheckStatus::Skipped,
            expected: String::new(),
            actual: String::new(),
            context: reason.into(),
        }
    }

    fn error(name: impl Into<String>, err: impl fmt::Display) -> Self {
        CheckResult {
            name: name.into(),
            status: CheckStatus::Fail,
            expected: "no error".into(),
            actual: err.to_string(),
            context: String::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == CheckStatus::Pass
    }

    pub fn failed(&self) -> bool {
        self.status == CheckStatus::Fail
    }
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}", self.status, self.name)?;
        match self.status {
            CheckStatus::Skipped => write!(f, ": {}", self.context),
            _ => {
                write!(f, ": expected {}, got {}", self.expected, self.actual)?;
                if !self.context.is_empty() {
                    write!(f, " ({})", self.context)?;
                }
                Ok(())
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub checks: Vec<CheckResult>,
    pub passed: bool,
}

impl VerifyReport {
    pub fn new(checks: Vec<CheckResult>) -> Self {
        let passed = checks.iter().all(|c| !c.failed());
        VerifyReport { checks, passed }
    }
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// The affine preset yields `2^k` rank-one pieces, `C(k, j)` of them of
/// dimension `n − j`.
pub fn check_etale(n: usize, k: usize) -> CheckResult {
    let name = format!("etale(n={n}, k={k})");
    if k > n {
        return CheckResult::skipped(name, "needs k <= n");
    }
    let spec = match (Preset::Etale { n, k }).spec() {
        Ok(s) => s,
        Err(e) => return CheckResult::error(name, e),
    };
    let report = match assemble(&spec) {
        Ok(r) => r,
        Err(e) => return CheckResult::error(name, e),
    };
    let expected_dims: Vec<usize> = (0..=k).map(|j| binomial(k, j)).collect();
    let actual_dims: Vec<usize> = (0..=k)
        .map(|j| report.order.iter().filter(|p| p.dim == (n - j) as i64).count())
        .collect();
    let ok = report.order.len() == 1 << k
        && report.order.iter().all(|p| p.rank == 1)
        && report.total_rank == 1 << k
        && actual_dims == expected_dims
        && report.is_dimension_ordered();
    CheckResult::compare(
        name,
        format!("{} pieces, dims-by-codim {:?}, total rank {}", 1 << k, expected_dims, 1 << k),
        format!(
            "{} pieces, dims-by-codim {:?}, total rank {}",
            report.order.len(),
            actual_dims,
            report.total_rank
        ),
        ok,
        "",
    )
}

/// Total rank equals `(n + 1)·|G|`, the rank of `K₀([P^n/G])`.
pub fn check_projective_rank(spec: &ActionSpec) -> CheckResult {
    let name = format!("projective_rank({})", describe(spec));
    let SpaceKind::Projective(n) = spec.space() else {
        return CheckResult::skipped(name, "not a projective space");
    };
    if !spec.is_effective() {
        return CheckResult::skipped(name, "action has a nontrivial kernel");
    }
    match assemble(spec) {
        Ok(report) => {
            let expected = (n as i64 + 1) * spec.order() as i64;
            CheckResult::compare(name, expected, report.total_rank, expected == report.total_rank, "")
        }
        Err(e) => CheckResult::error(name, e),
    }
}

/// `(1/|G|) Σ_{g,h} χ_c(X^g ∩ X^h)`, from subgroup fixed loci only.
pub fn burnside_double_sum(spec: &ActionSpec) -> Result<(i64, i64), crate::group::GroupError> {
    let elems: Vec<_> = spec.elements().collect();
    let mut sum = 0;
    for &g in &elems {
        for &h in &elems {
            sum += fixed_chi_c(spec, &span(spec.rank(), &[g, h])?)?;
        }
    }
    Ok((sum, spec.order() as i64))
}

/// Sum of component ranks against the Burnside double sum.
pub fn check_burnside_total(spec: &ActionSpec) -> CheckResult {
    let name = format!("burnside_total({})", describe(spec));
    let (sum, order) = match burnside_double_sum(spec) {
        Ok(v) => v,
        Err(e) => return CheckResult::error(name, e),
    };
    if sum % order != 0 {
        return CheckResult::compare(
            name,
            "integral double sum",
            format!("{sum}/{order}"),
            false,
            "Burnside double sum not divisible by |G|",
        );
    }
    match assemble(spec) {
        Ok(report) => CheckResult::compare(
            name,
            sum / order,
            report.total_rank,
            sum / order == report.total_rank,
            format!("double sum {sum} over |G| = {order}"),
        ),
        Err(e) => CheckResult::error(name, e),
    }
}

/// Every component of the quadric preset has a projective space or a point
/// as coarse space, and the exceptional-object count matches Burnside.
pub fn check_quadric(q_dim: usize) -> CheckResult {
    let name = format!("quadric(q_dim={q_dim})");
    let spec = match (Preset::Quadric { q_dim }).spec() {
        Ok(s) => s,
        Err(e) => return CheckResult::error(name, e),
    };
    let report = match assemble(&spec) {
        Ok(r) => r,
        Err(e) => return CheckResult::error(name, e),
    };
    let (sum, order) = match burnside_double_sum(&spec) {
        Ok(v) => v,
        Err(e) => return CheckResult::error(name, e),
    };
    let all_known = report
        .components
        .iter()
        .all(|c| matches!(c.coarse_type, CoarseType::ProjSpace(_) | CoarseType::Point));
    // elements negating between 2 and q_dim of the coordinates fix two
    // nonempty pieces, the others one
    let n = q_dim + 1;
    let mut shape_ok = true;
    for g in spec.elements().filter(|g| !g.is_identity()) {
        let w = g.popcount();
        let count = report.components.iter().filter(|c| c.element == g && c.split_index != Some(2)).count();
        let expected = if (2..n).contains(&w) { 2 } else { 1 };
        shape_ok &= count == expected;
    }
    let ok = all_known && shape_ok && sum % order == 0 && sum / order == report.total_rank;
    CheckResult::compare(
        name,
        format!("{} exceptional objects, all coarse types P^k or points", sum / order),
        format!(
            "{} exceptional objects, {}",
            report.total_rank,
            if all_known { "all coarse types P^k or points" } else { "undetermined coarse types" }
        ),
        ok,
        if shape_ok { "" } else { "fixed-locus piece counts off" },
    )
}

/// Gram conditions for one projective preset: binomial diagonal blocks and
/// unipotent upper-triangular shape.
pub fn check_gram(spec: &ActionSpec) -> CheckResult {
    let name = format!("gram({})", describe(spec));
    let report = match assemble(spec) {
        Ok(r) => r,
        Err(e) => return CheckResult::error(name, e),
    };
    let gm = match report_gram(spec, &report) {
        Ok(g) => g,
        Err(e) => return CheckResult::error(name, e),
    };
    let diag = gm.diagonal_blocks_binomial();
    let tri = gm.is_unipotent_upper();
    let twists: Vec<String> = gm
        .blocks
        .iter()
        .filter(|b| !b.twist.is_trivial())
        .map(|b| format!("{}⊗{}", b.label, b.twist))
        .collect();
    let context = if twists.is_empty() {
        format!("{} generators, trivial characters", gm.matrix.len())
    } else {
        format!("{} generators, twists {}", gm.matrix.len(), twists.join(" "))
    };
    CheckResult::compare(
        name,
        "binomial diagonal blocks, unipotent upper triangular",
        format!(
            "{} diagonal blocks, {}",
            if diag { "binomial" } else { "non-binomial" },
            if tri { "unipotent upper triangular" } else { "not triangular" }
        ),
        diag && tri,
        context,
    )
}

/// Cross-block vanishing pattern of the `[P²/μ₂²]` example: lines are
/// mutually orthogonal, points are mutually orthogonal, and line/point
/// blocks pair only in the order direction, nontrivially at least once.
pub fn check_p2_cross_blocks() -> CheckResult {
    let name = "gram_cross_blocks(p2-example)";
    let spec = match Preset::P2Example.spec() {
        Ok(s) => s,
        Err(e) => return CheckResult::error(name, e),
    };
    let gm = match assemble(&spec).map_err(|e| e.to_string()).and_then(|r| {
        report_gram(&spec, &r).map_err(|e| e.to_string())
    }) {
        Ok(g) => g,
        Err(e) => return CheckResult::error(name, e),
    };
    let (lines_ok, points_ok, line_point_ok, nonzero) = p2_cross_pattern(&gm);
    CheckResult::compare(
        name,
        "line-line 0, point-point 0, point→line 0, some line→point ≠ 0",
        format!(
            "line-line {}, point-point {}, point→line {}, line→point {}",
            if lines_ok { "0" } else { "≠0" },
            if points_ok { "0" } else { "≠0" },
            if line_point_ok { "0" } else { "≠0" },
            if nonzero { "≠0 somewhere" } else { "all 0" }
        ),
        lines_ok && points_ok && line_point_ok && nonzero,
        "",
    )
}

fn p2_cross_pattern(gm: &GramMatrix) -> (bool, bool, bool, bool) {
    let lines: Vec<usize> = (0..gm.blocks.len()).filter(|&b| gm.blocks[b].coarse_dim == 1).collect();
    let points: Vec<usize> = (0..gm.blocks.len()).filter(|&b| gm.blocks[b].coarse_dim == 0).collect();
    let pairwise_zero = |set: &[usize]| {
        set.iter()
            .all(|&a| set.iter().all(|&b| a == b || gm.block_is_zero(a, b)))
    };
    let lines_ok = pairwise_zero(&lines);
    let points_ok = pairwise_zero(&points);
    let line_point_ok = lines
        .iter()
        .all(|&l| points.iter().all(|&p| gm.block_is_zero(p, l)));
    let nonzero = lines
        .iter()
        .any(|&l| points.iter().any(|&p| !gm.block_is_zero(l, p)));
    (lines_ok, points_ok, line_point_ok, nonzero)
}

/// Gram conditions on `[P¹/μ₂]`, `[P²/μ₂²]`, `[P^n/μ₂^n]` for `n ≤ 4`, plus
/// the `[P²/μ₂²]` cross-block pattern.
pub fn check_gram_presets() -> CheckResult {
    let mut results: Vec<CheckResult> = Vec::new();
    for n in 1..=4 {
        match (Preset::PnFull { n }).spec() {
            Ok(spec) => results.push(check_gram(&spec)),
            Err(e) => results.push(CheckResult::error(format!("pn-full({n})"), e)),
        }
    }
    results.push(check_p2_cross_blocks());
    let failed: Vec<&CheckResult> = results.iter().filter(|r| r.failed()).collect();
    CheckResult::compare(
        "gram_presets",
        format!("{} presets pass", results.len()),
        format!("{} presets pass", results.len() - failed.len()),
        failed.is_empty(),
        results
            .iter()
            .map(|r| format!("{} {}", r.status, r.name))
            .collect::<Vec<_>>()
            .join("; "),
    )
}

/// The `[P²/μ₂²]` example: seven pieces (a plane, three lines, three points),
/// total rank 12, and the grouping plan lands on
/// `⟨P², P¹_x, p, P¹_y, q, P¹_z, r⟩`.
pub fn check_p2_example() -> CheckResult {
    let name = "p2_example";
    let report = match Preset::P2Example.spec().map_err(|e| e.to_string()).and_then(|s| {
        assemble(&s).map_err(|e| e.to_string())
    }) {
        Ok(r) => r,
        Err(e) => return CheckResult::error(name, e),
    };
    let plan = match msodc_plan(&report, None) {
        Ok(p) => p,
        Err(e) => return CheckResult::error(name, e),
    };
    let grouped: Vec<String> = plan.target.iter().map(|&p| short_p2_name(&report, p)).collect();
    let expected = ["P2", "P1_x", "p", "P1_y", "q", "P1_z", "r"];
    let dims = |d: i64| report.order.iter().filter(|p| p.dim == d).count();
    let ok = report.order.len() == 7
        && (dims(2), dims(1), dims(0)) == (1, 3, 3)
        && report.total_rank == 12
        && grouped == expected
        && plan.permute(&(0..7).collect::<Vec<_>>()) == plan.target;
    CheckResult::compare(
        name,
        format!("7 pieces (1 plane, 3 lines, 3 points), rank 12, grouped <{}>", expected.join(", ")),
        format!(
            "{} pieces ({} plane, {} lines, {} points), rank {}, grouped <{}>",
            report.order.len(),
            dims(2),
            dims(1),
            dims(0),
            report.total_rank,
            grouped.join(", ")
        ),
        ok,
        format!("{} moves", plan.moves.len()),
    )
}

/// Names pieces of `[P²/μ₂²]` as in the classical picture: the lines
/// `P¹_x = V(x)` etc. and the points `p, q, r` on the coordinate axes.
pub fn short_p2_name(report: &SodReport, position: usize) -> String {
    let c = report.component_at(position);
    let names = ["x", "y", "z"];
    match c.coarse_dim {
        2 => "P2".into(),
        1 => {
            let missing = (0..3).find(|i| !c.piece.support.contains(i)).unwrap_or(0);
            format!("P1_{}", names[missing])
        }
        0 => ["p", "q", "r"][c.piece.support[0]].into(),
        _ => c.piece.support.iter().map(|&i| names[i]).collect(),
    }
}

/// Replays the grouping plan on the `[P²/μ₂²]` generator sequence.
pub fn check_mutation_replay() -> CheckResult {
    let name = "mutation_replay(p2-example)";
    let run = || -> Result<CheckResult, String> {
        let spec = Preset::P2Example.spec().map_err(|e| e.to_string())?;
        let report = assemble(&spec).map_err(|e| e.to_string())?;
        let gm = report_gram(&spec, &report).map_err(|e| e.to_string())?;
        let seq = gm.to_sequence().map_err(|e| e.to_string())?;
        let plan = msodc_plan(&report, Some(&seq)).map_err(|e| e.to_string())?;
        let mut state = seq.clone();
        let mut transpositions_ok = true;
        for m in &plan.moves {
            let before = state.clone();
            let (next, orthogonal) = state.move_block(m.as_block_move()).map_err(|e| e.to_string())?;
            if orthogonal {
                let mut vs = before.vectors().to_vec();
                let runs = before.block_ranges().map_err(|e| e.to_string())?;
                let (a, b) = (runs[m.block - 1].1.clone(), runs[m.block].1.clone());
                let moved = vs[b.clone()].to_vec();
                let passed = vs[a.clone()].to_vec();
                vs.splice(a.start..b.end, moved.into_iter().chain(passed));
                transpositions_ok &= next.vectors() == vs.as_slice();
            }
            state = next;
        }
        let (scripted, _) = apply_script(&seq, &plan.script()).map_err(|e| e.to_string())?;
        let labels = state.block_labels().map_err(|e| e.to_string())?;
        let target: Vec<String> = plan.target.iter().map(|&p| report.order[p].label.clone()).collect();
        let semi = state.is_semiorthogonal();
        let det = state.determinant();
        let ok = semi && det.abs().is_one() && labels == target && transpositions_ok && scripted == state;
        Ok(CheckResult::compare(
            name,
            "semiorthogonal, unimodular, class-grouped blocks",
            format!(
                "{}, det {}, {}",
                if semi { "semiorthogonal" } else { "not semiorthogonal" },
                det,
                if labels == target { "class-grouped blocks" } else { "blocks out of order" }
            ),
            ok,
            format!(
                "moves: {}",
                plan.moves
                    .iter()
                    .map(|m| format!(
                        "{}{}",
                        m.block,
                        if m.orthogonal == Some(true) { "(orth)" } else { "" }
                    ))
                    .collect::<Vec<_>>()
                    .join(",")
            ),
        ))
    };
    run().unwrap_or_else(|e| CheckResult::error(name, e))
}

/// A random effective diagonal action on `P^n`, `1 ≤ n ≤ max_n`,
/// `0 ≤ k ≤ min(n, max_k)`.
pub fn random_projective_spec(rng: &mut impl Rng, max_n: usize, max_k: usize) -> ActionSpec {
    loop {
        let n = rng.random_range(1..=max_n);
        let k = rng.random_range(0..=n.min(max_k));
        let chars = (0..=n)
            .map(|_| Character::from_index(rng.random_range(0..1u32 << k), k))
            .collect();
        let spec = ActionSpec::from_characters(SpaceKind::Projective(n), k, chars)
            .expect("sizes are consistent");
        if spec.is_effective() {
            return spec;
        }
    }
}

/// Rank identity and Burnside agreement over random effective projective
/// actions.
pub fn check_random_projective(count: usize, seed: u64) -> CheckResult {
    let name = format!("random_projective(count={count}, seed={seed})");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for _ in 0..count {
        let spec = random_projective_spec(&mut rng, 4, 4);
        let rank = check_projective_rank(&spec);
        let burnside = check_burnside_total(&spec);
        if !rank.passed() || !burnside.passed() {
            failures.push(format!("{} / {}", rank, burnside));
        }
    }
    CheckResult::compare(
        name,
        format!("{count} agreeing specs"),
        format!("{} agreeing specs", count - failures.len()),
        failures.is_empty(),
        failures.into_iter().take(3).collect::<Vec<_>>().join("; "),
    )
}

fn describe(spec: &ActionSpec) -> String {
    let rows: Vec<String> = spec
        .rows()
        .iter()
        .map(|r| r.iter().map(|b| b.to_string()).collect())
        .collect();
    format!("{} k={} [{}]", spec.space(), spec.rank(), rows.join(" "))
}

/// Names accepted by [`run_named`].
pub const CHECK_NAMES: &[&str] = &[
    "etale",
    "p2-example",
    "projective-rank",
    "burnside",
    "random-projective",
    "quadric",
    "gram",
    "mutation",
];

/// Runs one named family of checks over its default presets.
pub fn run_named(name: &str) -> Option<Vec<CheckResult>> {
    let out = match name {
        "etale" => (0..=6)
            .flat_map(|n| (0..=n).map(move |k| check_etale(n, k)))
            .collect(),
        "p2-example" => vec![check_p2_example()],
        "projective-rank" => projective_presets().iter().map(check_projective_rank).collect(),
        "burnside" => projective_presets()
            .iter()
            .chain(quadric_presets().iter())
            .map(check_burnside_total)
            .collect(),
        "random-projective" => vec![check_random_projective(200, 0x5eed)],
        "quadric" => (1..=5).map(check_quadric).collect(),
        "gram" => vec![check_gram_presets()],
        "mutation" => vec![check_mutation_replay()],
        _ => return None,
    };
    Some(out)
}

fn projective_presets() -> Vec<ActionSpec> {
    (1..=4)
        .filter_map(|n| (Preset::PnFull { n }).spec().ok())
        .collect()
}

fn quadric_presets() -> Vec<ActionSpec> {
    (1..=5)
        .filter_map(|q_dim| (Preset::Quadric { q_dim }).spec().ok())
        .collect()
}

/// Every named check.
pub fn default_suite() -> Vec<CheckResult> {
    CHECK_NAMES
        .iter()
        .flat_map(|n| run_named(n).unwrap_or_default())
        .collect()
}

/// Checks applicable to one spec.
pub fn checks_for_spec(spec: &ActionSpec) -> Vec<CheckResult> {
    let mut out = vec![check_burnside_total(spec)];
    if let SpaceKind::Projective(_) = spec.space() {
        out.push(check_projective_rank(spec));
        out.push(check_gram(spec));
    }
    out
}

/// Checks applicable to one preset.
pub fn checks_for_preset(preset: Preset) -> Vec<CheckResult> {
    let spec = match preset.spec() {
        Ok(s) => s,
        Err(e) => return vec![CheckResult::error(preset.to_string(), e)],
    };
    let mut out = match preset {
        Preset::Etale { n, k } => vec![check_etale(n, k)],
        Preset::Quadric { q_dim } => vec![check_quadric(q_dim)],
        Preset::P2Example => vec![check_p2_example(), check_p2_cross_blocks(), check_mutation_replay()],
        Preset::PnFull { .. } => Vec::new(),
    };
    out.extend(checks_for_spec(&spec));
    out
}

/// Seconds elapsed while running `f`.
pub fn timed<T>(f: impl FnOnce() -> T) -> (T, f64) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed().as_secs_f64())
}
