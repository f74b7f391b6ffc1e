//! Command-line surface over the library.
//!
//! Inputs are files: `.cox` holds a Coxeter system in any supported text
//! form (order matrix, edge list, bare generator count, or JSON), `.anm`
//! holds a raw almost negative matrix (text or JSON). Matrix commands
//! accept both, going through the cosine matrix for `.cox`; `decide`,
//! `chamber` and `davis` want a system and accept only `.cox`.
//!
//! Exit codes: 0 on success, 2 on any input or guard error, 3 when
//! `lemma-b` finds a violation of the splitting dichotomy, 1 when
//! `verify-paper` fails a check. The environment variable `COX_MAX_N`
//! overrides the default order guard on the exponential enumerations.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{ColorChoice, Parser, Subcommand};

use crate::anm::AlmostNegativeMatrix;
use crate::anm::LemmaBConclusion;
use crate::chamber::{chamber_with, Chamber};
use crate::coxmat::CoxeterSystem;
use crate::davis::{enumerate_davis_cells, DavisPoset};
use crate::error::Error;
use crate::hyperbolicity::{decide_with, Witness};
use crate::index_set::IndexSet;
use crate::nerve::{
    build_nerve_with_limit, intrinsic_distance, suspension_distance, suspension_distance_polar,
    verify_paper_counterexamples, GeodesicResult, NervePoint,
};
use crate::Result;

/// Captured result of one CLI invocation.
#[derive(Debug)]
pub struct CliOutcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `argv` (including the program name) and runs one command.
pub fn run<I, T>(argv: I) -> CliOutcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            // Help and version surface as clap "errors" with code 0.
            return if e.exit_code() == 0 {
                CliOutcome {
                    code: 0,
                    stdout: rendered,
                    stderr: String::new(),
                }
            } else {
                CliOutcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: rendered,
                }
            };
        }
    };
    match execute(cli.cmd) {
        Ok((code, stdout)) => CliOutcome {
            code,
            stdout,
            stderr: String::new(),
        },
        Err(e) => CliOutcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

#[derive(Parser)]
#[command(
    name = "moussong",
    version,
    about = "Gromov-hyperbolicity of Coxeter groups and the geometry behind the criterion",
    color = ColorChoice::Never
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Classify an almost negative matrix
    Classify {
        /// Input file (.anm matrix or .cox Coxeter system)
        input: PathBuf,
        #[arg(long)]
        json: bool,
        /// Tolerance base overriding the default 1e-9
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Link matrix with respect to an index set
    Link {
        /// Input file (.anm matrix or .cox Coxeter system)
        input: PathBuf,
        /// 1-based indices to link over, comma separated
        #[arg(long = "I", value_name = "I1,I2,...")]
        indices: String,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Intrinsic distance between two points of the nerve
    NerveDist {
        /// Input file (.anm matrix or .cox Coxeter system)
        input: PathBuf,
        /// Ambient coordinates of the first point, comma separated
        #[arg(long, value_name = "C1,C2,...", allow_hyphen_values = true)]
        x: String,
        /// Ambient coordinates of the second point, comma separated
        #[arg(long, value_name = "C1,C2,...", allow_hyphen_values = true)]
        y: String,
        /// Sampling resolution on shared faces (at least 8)
        #[arg(long, default_value_t = 256)]
        resolution: u32,
        /// Write the geodesic polyline to a CSV file
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Distance in the spherical suspension of the nerve
    SuspensionDist {
        /// Input file (.anm matrix or .cox Coxeter system)
        input: PathBuf,
        /// Ambient coordinates of the first base point, comma separated
        #[arg(long, value_name = "C1,C2,...", allow_hyphen_values = true)]
        x: String,
        /// Ambient coordinates of the second base point, comma separated
        #[arg(long, value_name = "C1,C2,...", allow_hyphen_values = true)]
        y: String,
        /// Polar angles t1,t2 in [0,pi]; omitted puts both points on the equator
        #[arg(long, value_name = "T1,T2")]
        polar: Option<String>,
        /// Sampling resolution on shared faces (at least 8)
        #[arg(long, default_value_t = 256)]
        resolution: u32,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Decide Gromov-hyperbolicity of a Coxeter system
    Decide {
        /// Input file (.cox Coxeter system)
        input: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Fundamental chamber of a finite Coxeter system
    Chamber {
        /// Input file (.cox Coxeter system)
        input: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Cell poset of the Davis complex of a finite Coxeter system
    Davis {
        /// Input file (.cox Coxeter system)
        input: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Re-run the counterexamples to the strict forms of Moussong's
    /// Lemmas 9.5, 9.7 and 9.11
    VerifyPaper {
        #[arg(long)]
        json: bool,
    },
    /// Zero-row link scan and the parabolic-or-reducible dichotomy
    LemmaB {
        /// Input file (.anm matrix or .cox Coxeter system)
        input: PathBuf,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        tol: Option<f64>,
    },
}

fn execute(cmd: Cmd) -> Result<(i32, String)> {
    match cmd {
        Cmd::Classify { input, json, tol } => {
            let a = load_matrix(&input, tol)?;
            let class = a.classify();
            let out = if json {
                format!("{}\n", serde_json::json!({ "class": class }))
            } else {
                format!("{class}\n")
            };
            Ok((0, out))
        }
        Cmd::Link {
            input,
            indices,
            json,
            tol,
        } => {
            let a = load_matrix(&input, tol)?;
            let one_based = parse_usize_list(&indices)?;
            let i_set = IndexSet::from_one_based(&one_based, a.order())?;
            let link = a.link(&i_set)?;
            let out = if json {
                format!("{}\n", link.to_json())
            } else {
                fmt_matrix(&link)
            };
            Ok((0, out))
        }
        Cmd::NerveDist {
            input,
            x,
            y,
            resolution,
            csv,
            json,
            tol,
        } => {
            let a = load_matrix(&input, tol)?;
            check_resolution(resolution)?;
            let nerve = build_nerve_with_limit(&a, max_order()?)?;
            let xp = NervePoint::from_ambient(&a, &parse_f64_list(&x)?)?;
            let yp = NervePoint::from_ambient(&a, &parse_f64_list(&y)?)?;
            let g = intrinsic_distance(&nerve, &xp, &yp, resolution)?;
            if let Some(path) = csv {
                write_polyline(&path, &g, a.order())?;
            }
            let out = if json {
                format!("{}\n", g.to_json())
            } else {
                fmt_geodesic("distance", &g)
            };
            Ok((0, out))
        }
        Cmd::SuspensionDist {
            input,
            x,
            y,
            polar,
            resolution,
            json,
            tol,
        } => {
            let a = load_matrix(&input, tol)?;
            check_resolution(resolution)?;
            let nerve = build_nerve_with_limit(&a, max_order()?)?;
            let xp = NervePoint::from_ambient(&a, &parse_f64_list(&x)?)?;
            let yp = NervePoint::from_ambient(&a, &parse_f64_list(&y)?)?;
            let g = match polar {
                Some(ts) => {
                    let angles = parse_f64_list(&ts)?;
                    if angles.len() != 2 {
                        return Err(Error::Parse(format!(
                            "--polar wants two angles, got {}",
                            angles.len()
                        )));
                    }
                    suspension_distance_polar(&nerve, angles[0], &xp, angles[1], &yp, resolution)?
                }
                None => suspension_distance(&nerve, &xp, &yp, resolution)?,
            };
            let out = if json {
                format!("{}\n", g.to_json())
            } else {
                fmt_geodesic("suspension distance", &g)
            };
            Ok((0, out))
        }
        Cmd::Decide { input, json } => {
            let sys = load_system(&input)?;
            let verdict = decide_with(&sys, max_order()?)?;
            let out = if json {
                format!("{}\n", verdict.to_json())
            } else {
                match &verdict.witness {
                    None => "HYPERBOLIC\n".to_string(),
                    Some(Witness::Affine { t }) => {
                        format!("NOT HYPERBOLIC: affine subsystem {}\n", fmt_gens(t))
                    }
                    Some(Witness::Commuting { t1, t2 }) => format!(
                        "NOT HYPERBOLIC: commuting infinite subsystems {} and {}\n",
                        fmt_gens(t1),
                        fmt_gens(t2)
                    ),
                }
            };
            Ok((0, out))
        }
        Cmd::Chamber { input, json } => {
            let sys = load_system(&input)?;
            let ch = chamber_with(&sys, max_order()?)?;
            let out = if json {
                format!("{}\n", ch.to_json())
            } else {
                fmt_chamber(&ch)
            };
            Ok((0, out))
        }
        Cmd::Davis { input, json } => {
            let sys = load_system(&input)?;
            let poset = enumerate_davis_cells(&sys)?;
            let out = if json {
                format!("{}\n", poset.to_json())
            } else {
                fmt_poset(&poset)
            };
            Ok((0, out))
        }
        Cmd::VerifyPaper { json } => {
            let report = verify_paper_counterexamples();
            let code = if report.all_passed() { 0 } else { 1 };
            let out = if json {
                format!("{}\n", report.to_json())
            } else {
                let mut s = String::new();
                for check in &report.checks {
                    if check.passed {
                        let _ = writeln!(s, "PASS {}", check.name);
                    } else {
                        let _ = writeln!(s, "FAIL {}: {}", check.name, check.details);
                    }
                }
                s
            };
            Ok((code, out))
        }
        Cmd::LemmaB { input, json, tol } => {
            let a = load_matrix(&input, tol)?;
            let report = a.check_lemma_b()?;
            let code = if report.is_violation() { 3 } else { 0 };
            let out = if json {
                format!("{}\n", report.to_json())
            } else {
                let mut s = String::new();
                if report.witnesses.is_empty() {
                    let _ = writeln!(s, "witnesses: none");
                } else {
                    let _ = writeln!(s, "witnesses:");
                    for (cell, row) in &report.witnesses {
                        let _ = writeln!(s, "  lk at {cell}: zero row {}", row + 1);
                    }
                }
                let conclusion = match &report.conclusion {
                    LemmaBConclusion::Parabolic => "conclusion: parabolic".to_string(),
                    LemmaBConclusion::Reducible { left, right } => {
                        format!("conclusion: reducible {left} + {right}")
                    }
                    LemmaBConclusion::NoZeroRowLinkFound => {
                        "conclusion: no zero-row link found".to_string()
                    }
                    LemmaBConclusion::LemmaViolation => {
                        "LEMMA VIOLATION: zero-row link but neither parabolic nor reducible"
                            .to_string()
                    }
                };
                let _ = writeln!(s, "{conclusion}");
                s
            };
            Ok((code, out))
        }
    }
}

/// Order guard for the exponential enumerations, overridable through
/// the COX_MAX_N environment variable.
fn max_order() -> Result<usize> {
    match std::env::var("COX_MAX_N") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("COX_MAX_N must be an integer, got {v:?}"))),
        Err(_) => Ok(crate::DEFAULT_MAX_ORDER),
    }
}

fn check_resolution(resolution: u32) -> Result<()> {
    if resolution < 8 {
        return Err(Error::BadResolution);
    }
    Ok(())
}

fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn extension(path: &Path) -> &str {
    path.extension().and_then(|e| e.to_str()).unwrap_or("")
}

fn load_system(path: &Path) -> Result<CoxeterSystem> {
    if extension(path) != "cox" {
        return Err(Error::Parse(format!(
            "{}: expected a .cox Coxeter system",
            path.display()
        )));
    }
    CoxeterSystem::from_text(&read_file(path)?)
}

fn load_matrix(path: &Path, tol: Option<f64>) -> Result<AlmostNegativeMatrix> {
    let mut a = match extension(path) {
        "anm" => {
            let text = read_file(path)?;
            if text.trim_start().starts_with('{') {
                AlmostNegativeMatrix::from_json(&text)?
            } else {
                AlmostNegativeMatrix::from_text(&text)?
            }
        }
        "cox" => load_system(path)?.cosine_matrix(),
        _ => {
            return Err(Error::Parse(format!(
                "{}: expected a .anm matrix or .cox Coxeter system",
                path.display()
            )))
        }
    };
    if let Some(t) = tol {
        a.set_tol_base(t);
    }
    Ok(a)
}

fn parse_usize_list(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(|tok| {
            tok.trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad index {tok:?}")))
        })
        .collect()
}

fn parse_f64_list(s: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(|tok| {
            tok.trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad number {tok:?}")))
        })
        .collect()
}

/// Generator-name rendering used in decide output: {s1,s2,s3}.
fn fmt_gens(t: &IndexSet) -> String {
    let names: Vec<String> = t.iter().map(|&i| format!("s{}", i + 1)).collect();
    format!("{{{}}}", names.join(","))
}

fn fmt_num(x: f64) -> String {
    let s = format!("{x:.6}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".to_string()
    } else {
        s.to_string()
    }
}

/// Text matrix form: order line, then rows. Entries within the matrix's
/// zero tolerance print as an exact 0, everything else with six decimals.
/// The output parses back as a matrix input.
fn fmt_matrix(a: &AlmostNegativeMatrix) -> String {
    let tau = a.tau_zero();
    let mut s = format!("{}\n", a.order());
    for row in a.rows() {
        let line: Vec<String> = row
            .iter()
            .map(|&x| if x.abs() <= tau { "0".into() } else { fmt_num(x) })
            .collect();
        let _ = writeln!(s, "{}", line.join(" "));
    }
    s
}

fn fmt_vec(v: &[f64]) -> String {
    let parts: Vec<String> = v.iter().map(|&x| fmt_num(x)).collect();
    format!("({})", parts.join(", "))
}

fn fmt_geodesic(label: &str, g: &GeodesicResult) -> String {
    if g.distance.is_infinite() {
        format!(
            "{label} = inf (points in different components, resolution {})\n",
            g.resolution
        )
    } else {
        format!(
            "{label} = {:.9} (error bound {:.9}, resolution {})\n",
            g.distance, g.error_bound, g.resolution
        )
    }
}

fn fmt_chamber(ch: &Chamber) -> String {
    let mut s = format!("n = {}\n", ch.order());
    for (j, u) in ch.dual_basis().iter().enumerate() {
        let _ = writeln!(s, "u{} = {}", j + 1, fmt_vec(u));
    }
    let _ = writeln!(s, "p = {}", fmt_vec(ch.apex()));
    for (t, q) in ch.vertices() {
        let _ = writeln!(s, "q{} = {}", t, fmt_vec(q));
    }
    s
}

fn fmt_word(word: &[usize]) -> String {
    if word.is_empty() {
        return "e".to_string();
    }
    word.iter().map(|&s| format!("s{}", s + 1)).collect()
}

fn fmt_poset(poset: &DavisPoset) -> String {
    let mut s = format!("group order {}\ncells {}\n", poset.group_order(), poset.cells().len());
    for c in poset.cells() {
        let covers: Vec<String> = c.covers.iter().map(|id| id.to_string()).collect();
        let _ = writeln!(
            s,
            "id={} subset={} word={} covers=[{}]",
            c.id,
            c.subset,
            fmt_word(&c.word),
            covers.join(",")
        );
    }
    s
}

fn write_polyline(path: &Path, g: &GeodesicResult, n: usize) -> Result<()> {
    let mut out = String::new();
    for p in &g.path {
        let coords: Vec<String> = p.ambient(n).iter().map(|v| format!("{v}")).collect();
        let _ = writeln!(out, "{}", coords.join(","));
    }
    std::fs::write(path, out).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write as _;

    fn run_args(args: &[&str]) -> CliOutcome {
        run(std::iter::once("moussong").chain(args.iter().copied()))
    }

    fn temp_file(ext: &str, contents: &str) -> tempfile::TempPath {
        let mut f = tempfile::Builder::new()
            .suffix(&format!(".{ext}"))
            .tempfile()
            .unwrap();
        f.write_all(contents.as_bytes()).unwrap();
        f.into_temp_path()
    }

    #[test]
    fn classify_and_link_roundtrip() {
        let anm = temp_file("anm", "3\n1 0 -1\n0 1 0\n-1 0 1\n");
        let path = anm.to_str().unwrap();

        let out = run_args(&["classify", path]);
        assert_eq!(out.code, 0);
        assert_eq!(out.stdout, "degenerate (non-parabolic)\n");

        let out = run_args(&["classify", path, "--json"]);
        assert!(out.stdout.contains("\"degenerate-non-parabolic\""));

        let out = run_args(&["link", path, "--I", "2"]);
        assert_eq!(out.code, 0);
        assert_eq!(out.stdout, "2\n1 -1\n-1 1\n");

        let json_out = run_args(&["link", path, "--I", "2", "--json"]);
        let reparsed = temp_file("anm", json_out.stdout.trim());
        let again = run_args(&["classify", reparsed.to_str().unwrap()]);
        assert_eq!(again.stdout, "parabolic\n");
    }

    #[test]
    fn decide_text_examples() {
        let tri = temp_file("cox", "3; 1 2 3; 1 3 3; 2 3 3");
        let out = run_args(&["decide", tri.to_str().unwrap()]);
        assert_eq!(out.code, 0);
        assert_eq!(out.stdout, "NOT HYPERBOLIC: affine subsystem {s1,s2,s3}\n");

        let d3 = temp_file("cox", "2; 1 2 3");
        let out = run_args(&["decide", d3.to_str().unwrap()]);
        assert_eq!(out.stdout, "HYPERBOLIC\n");

        let pair = temp_file("cox", "4; 1 2 inf; 3 4 inf");
        let out = run_args(&["decide", pair.to_str().unwrap()]);
        assert_eq!(
            out.stdout,
            "NOT HYPERBOLIC: commuting infinite subsystems {s1,s2} and {s3,s4}\n"
        );
    }

    #[test]
    fn decide_rejects_matrix_input() {
        let anm = temp_file("anm", "2\n1 0\n0 1\n");
        let out = run_args(&["decide", anm.to_str().unwrap()]);
        assert_eq!(out.code, 2);
        assert!(out.stderr.contains(".cox"));
    }

    #[test]
    fn nerve_dist_on_path_complex() {
        let anm = temp_file("anm", "3\n1 0 -1\n0 1 0\n-1 0 1\n");
        let out = run_args(&[
            "nerve-dist",
            anm.to_str().unwrap(),
            "--x",
            "1,0,0",
            "--y",
            "0,1,0",
            "--resolution",
            "64",
        ]);
        assert_eq!(out.code, 0, "stderr: {}", out.stderr);
        let d: f64 = out
            .stdout
            .split_whitespace()
            .nth(2)
            .unwrap()
            .parse()
            .unwrap();
        assert!((d - std::f64::consts::FRAC_PI_2).abs() < 1e-6);
    }

    #[test]
    fn suspension_dist_polar_poles() {
        let anm = temp_file("anm", "2\n1 0\n0 1\n");
        let out = run_args(&[
            "suspension-dist",
            anm.to_str().unwrap(),
            "--x",
            "1,0",
            "--y",
            "0,1",
            "--polar",
            "0,3.141592653589793",
        ]);
        assert_eq!(out.code, 0, "stderr: {}", out.stderr);
        assert!(out.stdout.contains("suspension distance = 3.141592654"));
    }

    #[test]
    fn resolution_floor_enforced() {
        let anm = temp_file("anm", "2\n1 0\n0 1\n");
        let out = run_args(&[
            "nerve-dist",
            anm.to_str().unwrap(),
            "--x",
            "1,0",
            "--y",
            "0,1",
            "--resolution",
            "4",
        ]);
        assert_eq!(out.code, 2);
    }

    #[test]
    fn lemma_b_reports_parabolic() {
        let anm = temp_file("anm", "2\n1 -1\n-1 1\n");
        let out = run_args(&["lemma-b", anm.to_str().unwrap()]);
        assert_eq!(out.code, 0);
        assert!(out.stdout.contains("conclusion: parabolic"));
        assert!(out.stdout.contains("lk at {1}: zero row 2"));
    }

    #[test]
    fn verify_paper_passes() {
        let out = run_args(&["verify-paper"]);
        assert_eq!(out.code, 0, "stdout: {}", out.stdout);
        assert_eq!(out.stdout.matches("PASS").count(), 3);
        assert!(!out.stdout.contains("FAIL"));
    }

    #[test]
    fn chamber_and_davis_text() {
        let d3 = temp_file("cox", "2; 1 2 3");
        let out = run_args(&["chamber", d3.to_str().unwrap()]);
        assert_eq!(out.code, 0);
        assert!(out.stdout.contains("u1 = (1.333333, 0.666667)"));
        assert!(out.stdout.contains("p = (2, 2)"));
        assert!(out.stdout.contains("q{1} = (2, 1)"));

        let out = run_args(&["davis", d3.to_str().unwrap()]);
        assert!(out.stdout.contains("group order 6"));
        assert!(out.stdout.contains("cells 13"));
        assert!(out.stdout.contains("word=s1s2s1"));
    }

    #[test]
    fn errors_exit_2() {
        let out = run_args(&["classify", "/nonexistent/file.anm"]);
        assert_eq!(out.code, 2);
        assert!(out.stderr.starts_with("error:"));

        let out = run_args(&["no-such-command"]);
        assert_eq!(out.code, 2);

        let bad = temp_file("anm", "2\n1 0.5\n0.5 1\n");
        let out = run_args(&["classify", bad.to_str().unwrap()]);
        assert_eq!(out.code, 2);
    }

    #[test]
    fn help_exits_zero() {
        let out = run_args(&["--help"]);
        assert_eq!(out.code, 0);
        assert!(out.stdout.contains("verify-paper"));
    }
}
