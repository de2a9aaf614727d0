use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;
use stabc_core::charfun::{moment_mp, state_char_table};
use stabc_core::complexity::{
    complexity_by_moments, complexity_report, complexity_upper_bound, stabilizer_complexity, ComplexityReport,
    RhoPFamily,
};
use stabc_core::matcore::{random_mixed_with, random_pure_with, substream_rng};
use stabc_core::states::{enumerate_stabilizer_states, known_fiducial};

use crate::error::{CliError, CliResult};
use crate::numfmt::sig9;
use crate::statefile::{read_state_file, StateFile};
use crate::verify::{table1_mp_max, table1_mp_min};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

pub fn to_json(value: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

/// Writes to `out` when given, otherwise returns the text for stdout.
pub fn emit(text: String, out: Option<&Path>) -> CliResult<Option<String>> {
    match out {
        Some(path) => {
            std::fs::write(path, text).map_err(|source| CliError::Io {
                path: path.to_path_buf(),
                source,
            })?;
            Ok(None)
        }
        None => Ok(Some(text)),
    }
}

#[derive(Debug, Serialize)]
pub struct ComputeOutput {
    pub dim: usize,
    pub c_value: f64,
    pub c_via_definition: f64,
    pub path_gap: f64,
    pub purity: f64,
    pub m4: f64,
    pub sqrt_m4: f64,
    /// `M_4⁴ + C`, present for pure states (equals `d²`).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub complementarity_sum: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub i_table: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub j_table: Option<Vec<f64>>,
}

impl ComputeOutput {
    fn from_report(r: ComplexityReport, tables: bool) -> Self {
        ComputeOutput {
            dim: r.dim,
            c_value: r.c_value,
            c_via_definition: r.c_via_definition,
            path_gap: r.path_gap,
            purity: r.purity,
            m4: r.m4,
            sqrt_m4: r.sqrt_m4,
            complementarity_sum: r.m4_fourth_power.map(|m| m + r.c_value),
            i_table: tables.then_some(r.i_table),
            j_table: tables.then_some(r.j_table),
        }
    }
}

pub struct Computed {
    pub text: String,
    pub warnings: Vec<String>,
}

pub fn compute(path: &Path, tables: bool, format: Format) -> CliResult<Computed> {
    let loaded = read_state_file(path)?;
    let out = ComputeOutput::from_report(complexity_report(&loaded.state)?, tables);
    let text = match format {
        Format::Json => to_json(&out),
        Format::Csv => {
            let mut s = String::from("dim,c_value,c_via_definition,path_gap,purity,m4,sqrt_m4,complementarity_sum\n");
            let opt = |x: Option<f64>| x.map(sig9).unwrap_or_default();
            let _ = writeln!(
                s,
                "{},{},{},{},{},{},{},{}",
                out.dim,
                sig9(out.c_value),
                sig9(out.c_via_definition),
                sig9(out.path_gap),
                sig9(out.purity),
                sig9(out.m4),
                sig9(out.sqrt_m4),
                opt(out.complementarity_sum)
            );
            if tables {
                s.push_str("k,l,i,j\n");
                let d = out.dim;
                let (it, jt) = (out.i_table.as_deref().unwrap_or_default(), out.j_table.as_deref().unwrap_or_default());
                for (n, (i, j)) in it.iter().zip(jt).enumerate() {
                    let _ = writeln!(s, "{},{},{},{}", n / d, n % d, sig9(*i), sig9(*j));
                }
            }
            s
        }
    };
    Ok(Computed {
        text,
        warnings: loaded.warnings,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PsiSource {
    Stabilizer,
    Fiducial,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub p: f64,
    pub c_value: f64,
    pub c_analytic: f64,
    /// Finite-difference `∂²C/∂p²` with step `SWEEP_STEP`; absent at `p = 1`.
    pub second_difference: Option<f64>,
    pub m4: f64,
    pub i_min: f64,
    pub i_max: f64,
    pub j_min: f64,
    pub j_max: f64,
}

pub const SWEEP_STEP: f64 = 1e-4;
pub const SWEEP_AGREEMENT_TOL: f64 = 1e-9;
const SWEEP_HEADER: &str = "p,c_value,c_analytic,second_difference,m4,i_min,i_max,j_min,j_max";

pub struct Sweep {
    pub rows: Vec<SweepRow>,
    /// Largest `|c_value − c_analytic|`.
    pub max_gap: f64,
}

pub fn sweep_rho_p(d: usize, psi: PsiSource, steps: usize) -> CliResult<Sweep> {
    if steps < 2 {
        return Err(CliError::Usage(format!("--steps must be at least 2, got {steps}")));
    }
    let family = match psi {
        PsiSource::Stabilizer => RhoPFamily::stabilizer(d)?,
        PsiSource::Fiducial => RhoPFamily::new(known_fiducial(d)?.density()?)?,
    };
    let mut rows = Vec::with_capacity(steps);
    let mut max_gap = 0.0f64;
    for n in 0..steps {
        // exact endpoints regardless of rounding in n/(steps−1)
        let p = if n + 1 == steps { 1.0 } else { n as f64 / (steps - 1) as f64 };
        let report = complexity_report(&family.state(p)?)?;
        let c_analytic = family.analytic(p)?;
        max_gap = max_gap.max((report.c_value - c_analytic).abs());
        let second_difference = if p == 0.0 {
            Some(family.second_difference(0.0, SWEEP_STEP)?)
        } else {
            family.second_difference(p, SWEEP_STEP).ok()
        };
        let fold = |v: &[f64], f: fn(f64, f64) -> f64, init| v.iter().copied().fold(init, f);
        rows.push(SweepRow {
            p,
            c_value: report.c_value,
            c_analytic,
            second_difference,
            m4: report.m4,
            i_min: fold(&report.i_table, f64::min, f64::INFINITY),
            i_max: fold(&report.i_table, f64::max, f64::NEG_INFINITY),
            j_min: fold(&report.j_table, f64::min, f64::INFINITY),
            j_max: fold(&report.j_table, f64::max, f64::NEG_INFINITY),
        });
    }
    Ok(Sweep { rows, max_gap })
}

pub fn render_sweep(rows: &[SweepRow], format: Format) -> String {
    match format {
        Format::Json => to_json(&rows),
        Format::Csv => {
            let mut s = format!("{SWEEP_HEADER}\n");
            for r in rows {
                let _ = writeln!(
                    s,
                    "{},{},{},{},{},{},{},{},{}",
                    sig9(r.p),
                    sig9(r.c_value),
                    sig9(r.c_analytic),
                    r.second_difference.map(sig9).unwrap_or_default(),
                    sig9(r.m4),
                    sig9(r.i_min),
                    sig9(r.i_max),
                    sig9(r.j_min),
                    sig9(r.j_max)
                );
            }
            s
        }
    }
}

#[derive(Debug, Serialize)]
pub struct MomentPair {
    pub p2: f64,
    pub p4: f64,
}

#[derive(Debug, Serialize)]
pub struct FiducialSummary {
    pub certified: bool,
    pub max_deviation: f64,
    pub c_value: f64,
    pub m_p: MomentPair,
}

#[derive(Debug, Serialize)]
pub struct Table1 {
    /// `M_p` over pure states: minimum at fiducials, maximum at stabilizers.
    pub m_p_fiducial_min: MomentPair,
    pub m_p_stabilizer_max: MomentPair,
    /// `C` over pure states: minimum at stabilizers, maximum at fiducials.
    pub c_stabilizer_min: f64,
    pub c_fiducial_max: f64,
}

#[derive(Debug, Serialize)]
pub struct ExtremalSummary {
    pub dim: usize,
    pub stabilizers: usize,
    pub c_min_stabilizer: f64,
    pub c_max_stabilizer: f64,
    pub m_p_stabilizer: MomentPair,
    pub bound_lower_pure: f64,
    pub bound_upper: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fiducial: Option<FiducialSummary>,
    pub table1: Table1,
}

fn moment_pair(f: impl Fn(f64) -> f64) -> MomentPair {
    MomentPair { p2: f(2.0), p4: f(4.0) }
}

pub fn extremal(d: usize) -> CliResult<ExtremalSummary> {
    let set = enumerate_stabilizer_states(d)?;
    let mut c_min = f64::INFINITY;
    let mut c_max = f64::NEG_INFINITY;
    let mut m = [f64::NEG_INFINITY; 2];
    for s in set.states() {
        let c = complexity_by_moments(&s.state)?;
        c_min = c_min.min(c);
        c_max = c_max.max(c);
        let t = state_char_table(&s.state)?;
        m[0] = m[0].max(moment_mp(&t, 2.0)?);
        m[1] = m[1].max(moment_mp(&t, 4.0)?);
    }
    let fiducial = match known_fiducial(d) {
        Ok(f) => {
            let rho = f.density()?;
            let t = state_char_table(&rho)?;
            Some(FiducialSummary {
                certified: f.certified(),
                max_deviation: f.certificate().max_deviation,
                c_value: complexity_by_moments(&rho)?,
                m_p: MomentPair {
                    p2: moment_mp(&t, 2.0)?,
                    p4: moment_mp(&t, 4.0)?,
                },
            })
        }
        Err(stabc_core::Error::NoKnownFiducial(_)) => None,
        Err(e) => return Err(e.into()),
    };
    Ok(ExtremalSummary {
        dim: d,
        stabilizers: set.len(),
        c_min_stabilizer: c_min,
        c_max_stabilizer: c_max,
        m_p_stabilizer: MomentPair { p2: m[0], p4: m[1] },
        bound_lower_pure: stabilizer_complexity(d),
        bound_upper: complexity_upper_bound(d),
        fiducial,
        table1: Table1 {
            m_p_fiducial_min: moment_pair(|p| table1_mp_min(d, p)),
            m_p_stabilizer_max: moment_pair(|p| table1_mp_max(d, p)),
            c_stabilizer_min: stabilizer_complexity(d),
            c_fiducial_max: complexity_upper_bound(d),
        },
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SampleKind {
    Pure,
    Mixed { rank: Option<usize> },
}

/// Random states as state files; sample `i` uses ChaCha stream `i` of `seed`.
pub fn sample_states(d: usize, count: usize, kind: SampleKind, seed: u64) -> CliResult<Vec<StateFile>> {
    (0..count)
        .map(|i| {
            let mut rng = substream_rng(seed, i as u64);
            Ok(match kind {
                SampleKind::Pure => {
                    let rho = random_pure_with(d, &mut rng)?;
                    // recover the amplitudes from the rank-one projector
                    let eig = stabc_core::matcore::hermitian_eig(rho.matrix())?;
                    let col = d - 1;
                    let v: Vec<_> = (0..d).map(|r| eig.eigenvectors.get(r, col)).collect();
                    StateFile::pure(&v)
                }
                SampleKind::Mixed { rank } => StateFile::density(&random_mixed_with(d, rank.unwrap_or(d), &mut rng)?),
            })
        })
        .collect()
}
