//! Named numerical checks grouped into suites.
//!
//! Every check name starts with the result it exercises (`Prop1-…`,
//! `Eq17-…`, `Table1-…`) so the output can be grepped.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::Serialize;
use stabc_core::charfun::{char_table, moment_mp, reconstruct, sqrt_char_table, state_char_table};
use stabc_core::complexity::{
    complexity_by_definition, complexity_by_moments, complexity_upper_bound, concavity_witness,
    convexity_scan, jordan_lie_terms, qubit_complexity, rho_p_convexity_witness, stabilizer_complexity,
    RhoPFamily,
};
use stabc_core::matcore::{hs_inner, random_mixed_with, random_pure_with, random_unitary, substream_rng};
use stabc_core::states::{
    bloch_to_state, certify_fiducial, enumerate_stabilizer_states, is_prime, known_fiducial, BlochVector,
};
use stabc_core::weyl::{clifford_conjugation_table, fourier_gate, weyl_matrix, weyl_product_phase, WeylIndex};
use stabc_core::{Complex64, ComplexMatrix, DensityState};

use crate::error::{CliError, CliResult};
use crate::numfmt::sig9;

pub const DEFAULT_SAMPLES: usize = 200;
pub const DEFAULT_CONVEXITY_SAMPLES: usize = 2000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Weyl,
    Charfun,
    Tradeoff,
    Prop1,
    Prop2Bounds,
    Clifford,
    Complementarity,
    Qubit,
    RhoP,
    Convexity,
    Stabilizers,
    Fiducials,
}

impl Suite {
    pub const ALL: [Suite; 12] = [
        Suite::Weyl,
        Suite::Charfun,
        Suite::Tradeoff,
        Suite::Prop1,
        Suite::Prop2Bounds,
        Suite::Clifford,
        Suite::Complementarity,
        Suite::Qubit,
        Suite::RhoP,
        Suite::Convexity,
        Suite::Stabilizers,
        Suite::Fiducials,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Weyl => "weyl",
            Suite::Charfun => "charfun",
            Suite::Tradeoff => "tradeoff",
            Suite::Prop1 => "prop1",
            Suite::Prop2Bounds => "prop2-bounds",
            Suite::Clifford => "clifford",
            Suite::Complementarity => "complementarity",
            Suite::Qubit => "qubit",
            Suite::RhoP => "rho-p",
            Suite::Convexity => "convexity",
            Suite::Stabilizers => "stabilizers",
            Suite::Fiducials => "fiducials",
        }
    }

    /// Position in [`Suite::ALL`]; feeds the sub-seed counter.
    fn counter(self) -> u64 {
        Suite::ALL.iter().position(|s| *s == self).expect("listed") as u64
    }
}

/// Parses a suite name; `all` expands to every suite.
pub fn parse_suites(name: &str) -> CliResult<Vec<Suite>> {
    if name == "all" {
        return Ok(Suite::ALL.to_vec());
    }
    Suite::from_str(name).map(|s| vec![s])
}

impl FromStr for Suite {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<Self> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| {
            let names: Vec<_> = Suite::ALL.iter().map(|x| x.name()).collect();
            CliError::Usage(format!("unknown suite '{s}'; expected one of {} or all", names.join(", ")))
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "relation", rename_all = "snake_case")]
pub enum Expect {
    AtMost { bound: f64 },
    AtLeast { bound: f64 },
    Above { bound: f64 },
    Below { bound: f64 },
    Near { target: f64, tolerance: f64 },
    /// Reported for context; never fails.
    Info,
}

impl Expect {
    fn holds(self, x: f64) -> bool {
        match self {
            Expect::AtMost { bound } => x <= bound,
            Expect::AtLeast { bound } => x >= bound,
            Expect::Above { bound } => x > bound,
            Expect::Below { bound } => x < bound,
            Expect::Near { target, tolerance } => (x - target).abs() <= tolerance,
            Expect::Info => true,
        }
    }

    fn describe(self) -> String {
        match self {
            Expect::AtMost { bound } => format!("<= {}", sig9(bound)),
            Expect::AtLeast { bound } => format!(">= {}", sig9(bound)),
            Expect::Above { bound } => format!("> {}", sig9(bound)),
            Expect::Below { bound } => format!("< {}", sig9(bound)),
            Expect::Near { target, tolerance } => format!("{} +/- {}", sig9(target), sig9(tolerance)),
            Expect::Info => "info".into(),
        }
    }

    fn csv_fields(self) -> (&'static str, String, String) {
        match self {
            Expect::AtMost { bound } => ("at_most", sig9(bound), String::new()),
            Expect::AtLeast { bound } => ("at_least", sig9(bound), String::new()),
            Expect::Above { bound } => ("above", sig9(bound), String::new()),
            Expect::Below { bound } => ("below", sig9(bound), String::new()),
            Expect::Near { target, tolerance } => ("near", sig9(target), sig9(tolerance)),
            Expect::Info => ("info", String::new(), String::new()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Pass,
    Fail,
    Info,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub suite: &'static str,
    pub name: String,
    pub observed: f64,
    #[serde(flatten)]
    pub expect: Expect,
    pub verdict: Verdict,
}

impl Check {
    fn new(suite: Suite, name: impl Into<String>, observed: f64, expect: Expect) -> Self {
        let verdict = match expect {
            Expect::Info => Verdict::Info,
            _ if expect.holds(observed) => Verdict::Pass,
            _ => Verdict::Fail,
        };
        Check {
            suite: suite.name(),
            name: name.into(),
            observed,
            expect,
            verdict,
        }
    }

    pub fn failed(&self) -> bool {
        self.verdict == Verdict::Fail
    }
}

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub dims: Vec<usize>,
    pub samples: Option<usize>,
    pub seed: u64,
}

impl VerifyOptions {
    fn samples(&self) -> usize {
        self.samples.unwrap_or(DEFAULT_SAMPLES)
    }

    /// Sub-seed for one suite and dimension: `seed + 1000·suite + d`, with
    /// sample `i` then drawn from ChaCha stream `i` of it.
    fn sub_seed(&self, suite: Suite, d: usize) -> u64 {
        self.seed.wrapping_add(1000 * suite.counter()).wrapping_add(d as u64)
    }
}

pub fn run_suite(suite: Suite, opts: &VerifyOptions) -> CliResult<Vec<Check>> {
    let mut out = Vec::new();
    if suite == Suite::Qubit {
        qubit(opts, &mut out)?;
        return Ok(out);
    }
    for &d in &opts.dims {
        let ctx = Ctx { suite, d, opts };
        match suite {
            Suite::Weyl => weyl(&ctx, &mut out)?,
            Suite::Charfun => charfun(&ctx, &mut out)?,
            Suite::Tradeoff => tradeoff(&ctx, &mut out)?,
            Suite::Prop1 => prop1(&ctx, &mut out)?,
            Suite::Prop2Bounds => prop2_bounds(&ctx, &mut out)?,
            Suite::Clifford => clifford(&ctx, &mut out)?,
            Suite::Complementarity => complementarity(&ctx, &mut out)?,
            Suite::RhoP => rho_p(&ctx, &mut out)?,
            Suite::Convexity => convexity(&ctx, &mut out)?,
            Suite::Stabilizers => stabilizers(&ctx, &mut out)?,
            Suite::Fiducials => fiducials(&ctx, &mut out)?,
            Suite::Qubit => unreachable!("handled above"),
        }
    }
    Ok(out)
}

struct Ctx<'a> {
    suite: Suite,
    d: usize,
    opts: &'a VerifyOptions,
}

impl Ctx<'_> {
    fn check(&self, out: &mut Vec<Check>, anchor: &str, observed: f64, expect: Expect) {
        out.push(Check::new(self.suite, format!("{anchor}-d{}", self.d), observed, expect));
    }

    /// Pure, rank-2 and full-rank states in rotation.
    fn states(&self) -> CliResult<Vec<DensityState>> {
        let seed = self.opts.sub_seed(self.suite, self.d);
        (0..self.opts.samples())
            .map(|i| {
                let mut rng = substream_rng(seed, i as u64);
                let rank = [1, 2.min(self.d), self.d][i % 3];
                Ok(random_mixed_with(self.d, rank, &mut rng)?)
            })
            .collect()
    }

    fn pure_states(&self) -> CliResult<Vec<DensityState>> {
        let seed = self.opts.sub_seed(self.suite, self.d);
        (0..self.opts.samples())
            .map(|i| Ok(random_pure_with(self.d, &mut substream_rng(seed, i as u64))?))
            .collect()
    }

    fn df(&self) -> f64 {
        self.d as f64
    }
}

fn max_of(values: impl IntoIterator<Item = f64>) -> f64 {
    values.into_iter().fold(0.0, f64::max)
}

fn weyl(ctx: &Ctx, out: &mut Vec<Check>) -> CliResult<()> {
    let d = ctx.d;
    let mats: Vec<ComplexMatrix> = WeylIndex::all(d).map(weyl_matrix).collect();
    let mut product = 0.0f64;
    let mut ortho = 0.0f64;
    for a in WeylIndex::all(d) {
        for b in WeylIndex::all(d) {
            let (phase, c) = weyl_product_phase(a, b)?;
            let lhs = &mats[a.flat()] * &mats[b.flat()];
            product = product.max(lhs.max_abs_diff(&mats[c.flat()].scale(phase.value())));
            let want = if a == b { ctx.df() } else { 0.0 };
            ortho = ortho.max((hs_inner(&mats[a.flat()], &mats[b.flat()])? - Complex64::new(want, 0.0)).norm());
        }
    }
    let unitary = max_of(mats.iter().map(|m| m.unitary_deviation()));
    ctx.check(out, "Eq2-product-law", product, Expect::AtMost { bound: 1e-12 * ctx.df() });
    ctx.check(out, "Eq2-unitarity", unitary, Expect::AtMost { bound: 1e-12 * ctx.df() });
    ctx.check(out, "Eq3-orthogonality", ortho, Expect::AtMost { bound: 1e-10 });
    Ok(())
}

fn charfun(ctx: &Ctx, out: &mut Vec<Check>) -> CliResult<()> {
    let mut recon = 0.0f64;
    let mut norm = 0.0f64;
    for rho in ctx.states()? {
        recon = recon.max(reconstruct(&char_table(rho.matrix())).hs_distance(rho.matrix()));
        norm = norm.max((sqrt_char_table(&rho)?.power_sum(2.0) - ctx.df()).abs());
    }
    let (mut m4_min, mut m4_max) = (f64::INFINITY, f64::NEG_INFINITY);
    for rho in ctx.pure_states()? {
        let m4 = moment_mp(&state_char_table(&rho)?, 4.0)?;
        m4_min = m4_min.min(m4);
        m4_max = m4_max.max(m4);
    }
    let df = ctx.df();
    ctx.check(out, "Eq4-reconstruction", recon, Expect::AtMost { bound: 1e-10 * df });
    ctx.check(out, "Eq7-sqrt-norm", norm, Expect::AtMost { bound: 1e-8 });
    ctx.check(out, "Table1-M4-pure-min", m4_min, Expect::AtLeast { bound: table1_mp_min(ctx.d, 4.0) - 1e-9 });
    ctx.check(out, "Table1-M4-pure-max", m4_max, Expect::AtMost { bound: df.powf(0.25) + 1e-9 });
    Ok(())
}

fn tradeoff(ctx: &Ctx, out: &mut Vec<Check>) -> CliResult<()> {
    let mut sum = 0.0f64;
    let mut norm = 0.0f64;
    for rho in ctx.states()? {
        for index in WeylIndex::all(ctx.d) {
            let t = jordan_lie_terms(&rho, index)?;
            sum = sum.max((t.jordan + t.lie - 2.0).abs());
            norm = norm.max(t.norm_gap);
        }
    }
    ctx.check(out, "Eq11-I+J=2", sum, Expect::AtMost { bound: 1e-10 });
    ctx.check(out, "Eq11-norm-form", norm, Expect::AtMost { bound: 1e-10 });
    Ok(())
}

fn prop1(ctx: &Ctx, out: &mut Vec<Check>) -> CliResult<()> {
    let mut gap = 0.0f64;
    for rho in ctx.states()? {
        gap = gap.max((complexity_by_definition(&rho)? - complexity_by_moments(&rho)?).abs());
    }
    ctx.check(out, "Prop1-dual-path", gap, Expect::AtMost { bound: 1e-9 * ctx.df() * ctx.df() });
    Ok(())
}

fn prop2_bounds(ctx: &Ctx, out: &mut Vec<Check>) -> CliResult<()> {
    let pure: Vec<f64> = ctx.pure_states()?.iter().map(complexity_by_moments).collect::<Result<_, _>>()?;
    let mixed: Vec<f64> = ctx.states()?.iter().map(complexity_by_moments).collect::<Result<_, _>>()?;
    let min = |v: &[f64]| v.iter().copied().fold(f64::INFINITY, f64::min);
    let max = |v: &[f64]| v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let upper = complexity_upper_bound(ctx.d);
    ctx.check(out, "Prop2b-pure-lower", min(&pure), Expect::AtLeast { bound: stabilizer_complexity(ctx.d) - 1e-9 });
    ctx.check(out, "Prop2c-upper", max(&pure).max(max(&mixed)), Expect::AtMost { bound: upper + 1e-9 });
    ctx.check(out, "Prop2c-nonnegative", min(&mixed), Expect::AtLeast { bound: -1e-9 });
    let c0 = complexity_by_moments(&DensityState::maximally_mixed(ctx.d)?)?;
    ctx.check(out, "Prop2-maximally-mixed", c0, Expect::Near { target: 0.0, tolerance: 1e-10 });
    Ok(())
}

fn clifford(ctx: &Ctx, out: &mut Vec<Check>) -> CliResult<()> {
    let f = fourier_gate(ctx.d)?;
    let is_clifford = clifford_conjugation_table(&f)?.is_clifford();
    let u = random_unitary(ctx.d, ctx.opts.sub_seed(ctx.suite, ctx.d))?;
    let mut fourier = 0.0f64;
    let mut haar = 0.0f64;
    for rho in ctx.states()? {
        let c = complexity_by_moments(&rho)?;
        fourier = fourier.max((complexity_by_moments(&rho.conjugate_by(&f)?)? - c).abs());
        haar = haar.max((complexity_by_moments(&rho.conjugate_by(&u)?)? - c).abs());
    }
    ctx.check(out, "Prop2a-fourier-is-clifford", f64::from(u8::from(is_clifford)), Expect::Near { target: 1.0, tolerance: 0.0 });
    ctx.check(out, "Prop2a-fourier-invariance", fourier, Expect::AtMost { bound: 1e-9 });
    ctx.check(out, "Prop2a-haar-non-invariance", haar, Expect::Above { bound: 1e-3 });
    Ok(())
}

fn complementarity(ctx: &Ctx, out: &mut Vec<Check>) -> CliResult<()> {
    let d2 = ctx.df() * ctx.df();
    let mut gap = 0.0f64;
    for rho in ctx.pure_states()? {
        let m44 = state_char_table(&rho)?.power_sum(4.0);
        gap = gap.max((m44 + complexity_by_moments(&rho)? - d2).abs());
    }
    ctx.check(out, "Eq17-complementarity", gap, Expect::AtMost { bound: 1e-8 });
    Ok(())
}

fn qubit(opts: &VerifyOptions, out: &mut Vec<Check>) -> CliResult<()> {
    let suite = Suite::Qubit;
    let seed = opts.sub_seed(suite, 2);
    let mut closed = 0.0f64;
    let (mut pure_min, mut pure_max) = (f64::INFINITY, f64::NEG_INFINITY);
    for i in 0..opts.samples() {
        let mut rng = substream_rng(seed, i as u64);
        let on_sphere = i % 2 == 0;
        // Haar pure states give uniform directions; a Ginibre qubit state has
        // purity (1 + r²)/2, which supplies the radius for mixed samples
        let dir = stabc_core::states::state_to_bloch(&random_pure_with(2, &mut rng)?)?.components();
        let r2 = if on_sphere { 1.0 } else { random_mixed_with(2, 2, &mut rng)?.purity() * 2.0 - 1.0 };
        let r = r2.max(0.0).sqrt();
        let b = BlochVector::new(r * dir[0], r * dir[1], r * dir[2])?;
        let generic = complexity_by_moments(&bloch_to_state(b)?)?;
        closed = closed.max((generic - qubit_complexity(b)).abs());
        if on_sphere {
            pure_min = pure_min.min(generic);
            pure_max = pure_max.max(generic);
        }
    }
    let push = |out: &mut Vec<Check>, name: &str, x, e| out.push(Check::new(suite, name, x, e));
    push(out, "SecIV-closed-form", closed, Expect::AtMost { bound: 1e-9 });
    push(out, "SecIV-pure-lower", pure_min, Expect::AtLeast { bound: 2.0 - 1e-9 });
    push(out, "SecIV-pure-upper", pure_max, Expect::AtMost { bound: 8.0 / 3.0 + 1e-9 });
    let s = 1.0 / 3f64.sqrt();
    let t = complexity_by_moments(&bloch_to_state(BlochVector::new(s, s, s)?)?)?;
    push(out, "SecIV-T-state", t, Expect::Near { target: 8.0 / 3.0, tolerance: 1e-9 });
    let z = complexity_by_moments(&bloch_to_state(BlochVector::new(0.0, 0.0, 1.0)?)?)?;
    push(out, "SecIV-stabilizer-state", z, Expect::Near { target: 2.0, tolerance: 1e-9 });
    Ok(())
}

fn rho_p(ctx: &Ctx, out: &mut Vec<Check>) -> CliResult<()> {
    let d = ctx.d;
    let df = ctx.df();
    let fam = RhoPFamily::stabilizer(d)?;
    let mut agree = 0.0f64;
    for i in 0..=20 {
        let p = i as f64 / 20.0;
        agree = agree.max((complexity_by_moments(&fam.state(p)?)? - fam.analytic(p)?).abs());
    }
    ctx.check(out, "Prop2d-analytic-vs-generic", agree, Expect::AtMost { bound: 1e-9 });

    let want = df * df * (df - 1.0);
    let f0 = fam.second_difference(0.0, 1e-4)?;
    ctx.check(out, "Prop2d-second-difference-p0", f0, Expect::Near { target: want, tolerance: 0.01 * want });

    let mut eps = 1e-2;
    let mut prev = fam.expansion_residual(eps)?;
    let mut worst = 0.0f64;
    while eps > 1.0001e-4 {
        eps /= 2.0;
        let cur = fam.expansion_residual(eps)?;
        worst = worst.max((prev / cur / 4.0 - 1.0).abs());
        prev = cur;
    }
    ctx.check(out, "Prop2d-expansion-eps2-ratio", worst, Expect::AtMost { bound: 0.25 });

    let f1 = fam.second_difference(1.0 - 1e-4, 1e-5)?;
    let sign = if d == 2 { Expect::Above { bound: 0.0 } } else { Expect::Below { bound: 0.0 } };
    ctx.check(out, "Prop2d-curvature-near-1", f1, sign);
    Ok(())
}

fn convexity(ctx: &Ctx, out: &mut Vec<Check>) -> CliResult<()> {
    let d = ctx.d;
    let samples = ctx.opts.samples.unwrap_or(DEFAULT_CONVEXITY_SAMPLES);
    let scan = convexity_scan(d, samples, ctx.opts.sub_seed(ctx.suite, d), false)?;
    let count = scan.violations.len() as f64;
    if d == 2 {
        ctx.check(out, "Prop2d-sampled-violations", count, Expect::AtMost { bound: 0.0 });
    } else {
        ctx.check(out, "Prop2d-sampled-violations", count, Expect::Info);
    }
    ctx.check(out, "Prop2d-sampled-max-gap", scan.max_gap, Expect::Info);
    if d >= 3 {
        let w = rho_p_convexity_witness(d)?;
        if d == 3 {
            ctx.check(out, "Prop2d-counterexample-mixture", w.mixture, Expect::Near { target: 5.5609, tolerance: 5e-4 });
            ctx.check(out, "Prop2d-counterexample-chord", w.chord, Expect::Near { target: 5.5528, tolerance: 5e-4 });
        }
        ctx.check(out, "Prop2d-counterexample", w.gap(), Expect::Above { bound: 0.0 });
    }
    let (lhs, rhs) = concavity_witness(d)?;
    ctx.check(out, "Prop2-non-concavity", rhs - lhs, Expect::Near { target: ctx.df() * ctx.df() - ctx.df(), tolerance: 1e-9 });
    Ok(())
}

fn stabilizers(ctx: &Ctx, out: &mut Vec<Check>) -> CliResult<()> {
    let d = ctx.d;
    if !is_prime(d) {
        // enumeration is only defined for prime d
        return Ok(());
    }
    let set = enumerate_stabilizer_states(d)?;
    let want = stabilizer_complexity(d);
    let mut dev = 0.0f64;
    for s in set.states() {
        dev = dev.max((complexity_by_moments(&s.state)? - want).abs());
    }
    ctx.check(out, "Prop2b-stabilizer-count", set.len() as f64, Expect::Near { target: (d * (d + 1)) as f64, tolerance: 0.0 });
    ctx.check(out, "Prop2b-stabilizer-C", dev, Expect::AtMost { bound: 1e-9 });
    Ok(())
}

fn fiducials(ctx: &Ctx, out: &mut Vec<Check>) -> CliResult<()> {
    let d = ctx.d;
    let Ok(fid) = known_fiducial(d) else {
        return Ok(());
    };
    let rho = fid.density()?;
    let table = state_char_table(&rho)?;
    ctx.check(out, "Table1-fiducial-certificate", fid.certificate().max_deviation, Expect::AtMost { bound: 1e-10 });
    ctx.check(out, "Table1-fiducial-C", complexity_by_moments(&rho)?, Expect::Near { target: complexity_upper_bound(d), tolerance: 1e-9 });
    ctx.check(out, "Table1-fiducial-M4", moment_mp(&table, 4.0)?, Expect::Near { target: table1_mp_min(d, 4.0), tolerance: 1e-9 });
    let mut zero = vec![Complex64::new(0.0, 0.0); d];
    zero[0] = Complex64::new(1.0, 0.0);
    ctx.check(out, "Table1-basis-state-rejected", certify_fiducial(&zero)?.max_deviation, Expect::AtLeast { bound: 0.5 });
    Ok(())
}

/// Smallest `M_p` over pure states, attained by SIC fiducials.
pub fn table1_mp_min(d: usize, p: f64) -> f64 {
    let df = d as f64;
    (1.0 + (df - 1.0) * (df + 1.0).powf(1.0 - p / 2.0)).powf(1.0 / p)
}

/// Largest `M_p` over pure states, attained by stabilizer states.
pub fn table1_mp_max(d: usize, p: f64) -> f64 {
    (d as f64).powf(1.0 / p)
}

pub fn render_text(checks: &[Check]) -> String {
    let width = checks.iter().map(|c| c.name.len()).max().unwrap_or(0).max(5);
    let mut s = String::new();
    let _ = writeln!(s, "{:<16} {:<width$} {:>16}  {:<26} verdict", "suite", "check", "observed", "expected");
    for c in checks {
        let verdict = match c.verdict {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Info => "INFO",
        };
        let _ = writeln!(
            s,
            "{:<16} {:<width$} {:>16}  {:<26} {verdict}",
            c.suite,
            c.name,
            sig9(c.observed),
            c.expect.describe()
        );
    }
    let failed = checks.iter().filter(|c| c.failed()).count();
    let _ = writeln!(s, "{} checks, {failed} failed", checks.len());
    s
}

pub fn render_csv(checks: &[Check]) -> String {
    let mut s = String::from("suite,check,observed,relation,bound,tolerance,verdict\n");
    for c in checks {
        let (relation, bound, tol) = c.expect.csv_fields();
        let verdict = serde_json::to_value(c.verdict).expect("plain enum");
        let _ = writeln!(
            s,
            "{},{},{},{relation},{bound},{tol},{}",
            c.suite,
            c.name,
            sig9(c.observed),
            verdict.as_str().unwrap_or_default()
        );
    }
    s
}
