//! Command-line front end: parse a group spec, classify, emit the
//! reference tables, or run the acceptance suite.
//!
//! Exit codes: 0 success, 1 classification failure, 2 usage error.

use std::env;
use std::process::ExitCode;

use torus_classify::acceptance;
use torus_classify::classify::{
    classify, codim_one_rows, family_answer, ClassifyError, EnumerateOptions,
};
use torus_classify::liegroups::{
    max_rank_subgroup, min_rep_dims, parse_spec, possible_f_sizes, GroupFactor,
};

const USAGE: &str = "usage:
  torus-classify classify <spec> [--json] [--family] [--psi-bound N]
  torus-classify tables --paper
  torus-classify check

<spec> follows the grammar FACTOR (\"x\" FACTOR)* (\"x\" \"T^\" INT)? with
FACTOR one of SU(n), SO(n), Spin(n), Sp(n), e.g. SU(2)xSO(5)xT^1; a factor
may carry a characteristic-count suffix like SU(4)#3. A bare T^k is also
accepted. TORUS_PSI_BOUND overrides the default weight bound.";

fn main() -> ExitCode {
    let args: Vec<String> = env::args().skip(1).collect();
    match run(&args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("{}", msg);
            eprintln!();
            eprintln!("{}", USAGE);
            ExitCode::from(2)
        }
        Err(CliError::Classify(e)) => {
            eprintln!("error: {}", e);
            ExitCode::from(1)
        }
        Err(CliError::Check(failed)) => {
            eprintln!("{} acceptance criteria failed", failed);
            ExitCode::from(1)
        }
    }
}

enum CliError {
    Usage(String),
    Classify(ClassifyError),
    Check(usize),
}

impl From<ClassifyError> for CliError {
    fn from(e: ClassifyError) -> Self {
        CliError::Classify(e)
    }
}

fn run(args: &[String]) -> Result<(), CliError> {
    match args.first().map(String::as_str) {
        Some("classify") => cmd_classify(&args[1..]),
        Some("tables") => cmd_tables(&args[1..]),
        Some("check") => cmd_check(&args[1..]),
        Some(other) => Err(CliError::Usage(format!("unknown command '{}'", other))),
        None => Err(CliError::Usage("missing command".to_string())),
    }
}

fn psi_bound_from_env() -> Result<Option<i64>, CliError> {
    match env::var("TORUS_PSI_BOUND") {
        Ok(v) => v
            .parse::<i64>()
            .map(Some)
            .map_err(|_| CliError::Usage(format!("TORUS_PSI_BOUND='{}' is not an integer", v))),
        Err(_) => Ok(None),
    }
}

fn cmd_classify(args: &[String]) -> Result<(), CliError> {
    let mut spec_text: Option<&str> = None;
    let mut json = false;
    let mut family = false;
    let mut opts = EnumerateOptions::default();
    if let Some(bound) = psi_bound_from_env()? {
        opts.psi_bound = bound;
    }
    let mut it = args.iter();
    while let Some(arg) = it.next() {
        match arg.as_str() {
            "--json" => json = true,
            "--family" => family = true,
            "--psi-bound" => {
                let v = it
                    .next()
                    .ok_or_else(|| CliError::Usage("--psi-bound needs a value".to_string()))?;
                opts.psi_bound = v
                    .parse()
                    .map_err(|_| CliError::Usage(format!("bad --psi-bound value '{}'", v)))?;
            }
            flag if flag.starts_with("--") => {
                return Err(CliError::Usage(format!("unknown flag '{}'", flag)))
            }
            text => {
                if spec_text.replace(text).is_some() {
                    return Err(CliError::Usage("more than one spec given".to_string()));
                }
            }
        }
    }
    let spec_text = spec_text.ok_or_else(|| CliError::Usage("missing group spec".to_string()))?;
    let spec = parse_spec(spec_text).map_err(|e| CliError::Usage(e.to_string()))?;

    if family {
        let answer = family_answer(&spec, true)?;
        if json {
            println!(
                "{{\"spec\":\"{}\",\"family\":\"{}\",\"sphere\":\"{}\",\"chi\":\"{}\"}}",
                answer.spec,
                answer.family.canonical_name(),
                answer.sphere.canonical_name(),
                answer.chi
            );
        } else {
            println!("simply connected classification for {}", answer.spec);
            println!(
                "  {}  (chi = {})",
                answer.family.canonical_name(),
                answer.chi
            );
            println!("  {}  (chi = 2)", answer.sphere.canonical_name());
        }
        return Ok(());
    }

    let table = classify(&spec, opts)?;
    if json {
        print!("{}", table.render_json_lines());
    } else {
        print!("{}", table.render_text());
    }
    Ok(())
}

fn cmd_tables(args: &[String]) -> Result<(), CliError> {
    if args != ["--paper".to_string()] {
        return Err(CliError::Usage(
            "tables takes exactly the flag --paper".to_string(),
        ));
    }
    print!("{}", reference_tables()?);
    Ok(())
}

fn cmd_check(args: &[String]) -> Result<(), CliError> {
    if !args.is_empty() {
        return Err(CliError::Usage("check takes no arguments".to_string()));
    }
    let results = acceptance::run_all();
    let mut failed = 0;
    for r in &results {
        println!("{}", r.line());
        if !r.passed() {
            failed += 1;
        }
    }
    if failed > 0 {
        return Err(CliError::Check(failed));
    }
    Ok(())
}

/// The seven reference tables, computed from the engine.
fn reference_tables() -> Result<String, ClassifyError> {
    let mut out = String::new();
    let opts = EnumerateOptions::default();

    let factors = [
        GroupFactor::Su(2),
        GroupFactor::Su(3),
        GroupFactor::Su(4),
        GroupFactor::Su(5),
        GroupFactor::Spin(4),
        GroupFactor::Spin(5),
        GroupFactor::Spin(7),
        GroupFactor::Spin(8),
        GroupFactor::Spin(9),
        GroupFactor::Spin(10),
        GroupFactor::Sp(1),
        GroupFactor::Sp(2),
        GroupFactor::Sp(3),
    ];

    out.push_str("== table 1: characteristic counts of elementary factors ==\n");
    for f in &factors {
        let sizes = possible_f_sizes(f)?;
        let sizes: Vec<String> = sizes.iter().map(|s| s.to_string()).collect();
        out.push_str(&format!("{:<9} {{{}}}\n", f.to_string(), sizes.join(",")));
    }

    out.push_str("\n== table 2: minimal nontrivial representation dimensions (real, complex) ==\n");
    for f in &factors {
        let (dr, dc) = min_rep_dims(f)?;
        out.push_str(&format!("{:<9} ({}, {})\n", f.to_string(), dr, dc));
    }

    out.push_str("\n== table 3: maximal-rank subgroups of maximal dimension ==\n");
    for f in &factors {
        if *f == GroupFactor::Spin(4) {
            continue;
        }
        let (name, codim) = max_rank_subgroup(f)?;
        out.push_str(&format!(
            "{:<9} {:<16} codim {}\n",
            f.to_string(),
            name,
            codim
        ));
    }

    out.push_str("\n== table 4: codimension-one orbits, rank-one instances ==\n");
    for spec_text in [
        "T^1",
        "SU(2)xT^1",
        "SO(3)xT^1",
        "SU(2)xSU(2)xT^1",
        "SU(2)xSO(3)xT^1",
    ] {
        let spec = parse_spec(spec_text).expect("fixed spec");
        for (t, name) in codim_one_rows(&spec, opts)? {
            out.push_str(&format!(
                "{:<17} {:<6} psi={} base={} A={} B={}\n",
                spec_text,
                name,
                t.psi_text(),
                t.base_text(),
                t.a_text(),
                t.b_text()
            ));
        }
    }

    out.push_str("\n== table 5: two simple factors, rank-one instances ==\n");
    for spec_text in ["SU(2)xSU(2)", "SU(2)xSO(3)", "SO(3)xSO(3)"] {
        let spec = parse_spec(spec_text).expect("fixed spec");
        let table = classify(&spec, opts)?;
        for row in &table.rows {
            out.push_str(&format!("{:<13} {}\n", spec_text, row.name));
        }
    }

    out.push_str("\n== table 6: four-dimensional torus manifolds ==\n");
    for spec_text in [
        "SU(3)",
        "SU(2)xSU(2)",
        "SU(2)xT^1",
        "SU(2)xSO(3)",
        "SO(3)xSO(3)",
        "SO(3)xT^1",
    ] {
        let spec = parse_spec(spec_text).expect("fixed spec");
        let table = classify(&spec, opts)?;
        for row in &table.rows {
            let tuple = row.tuple.as_ref().expect("tuple rows");
            out.push_str(&format!(
                "{:<13} {:<22} psi={} base={} A={} B={} a={}\n",
                spec_text,
                row.name,
                tuple.psi_text(),
                tuple.base_text(),
                tuple.a_text(),
                tuple.b_text(),
                tuple.a_matrix_text()
            ));
        }
    }

    out.push_str("\n== table 7: connected-sum families with SO(2l) symmetry ==\n");
    for spec_text in ["SO(4)xT^1", "SO(6)xT^1", "SO(4)xSO(4)", "SO(4)xSO(6)"] {
        let spec = parse_spec(spec_text).expect("fixed spec");
        let answer = family_answer(&spec, true)?;
        out.push_str(&format!(
            "{:<11} {}  u  {}   chi = {}\n",
            spec_text,
            answer.family.canonical_name(),
            answer.sphere.canonical_name(),
            answer.chi
        ));
    }

    Ok(out)
}
