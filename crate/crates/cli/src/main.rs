use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use nullity::formulas::{classify_threshold, closed_forms, standard_catalog, Classification, FormulaResult, Variant};
use nullity::report::{self, format_decimal, format_ratio, CompareReport, RatioJson, RowStatus, TableRow};
use nullity::{Caps, CoeffSpec, GroupSpec, Probability, Side};

#[derive(Parser)]
#[command(name = "nullity", version, about = "Probability that two random elements of a finite group algebra multiply to zero")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exhaustive annihilator census of one group algebra.
    Oracle {
        #[command(flatten)]
        instance: InstanceArgs,
        #[command(flatten)]
        run: RunArgs,
        /// Leave `elapsed_ms` out of the record so runs compare byte for byte.
        #[arg(long)]
        omit_timing: bool,
    },
    /// Closed-form values for one group algebra.
    Formula {
        #[command(flatten)]
        instance: InstanceArgs,
        /// Which form of a disputed polynomial to show. A formula that exists
        /// in only one form is shown for every choice.
        #[arg(long, value_enum, default_value_t = VariantArg::Both)]
        variant: VariantArg,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Closed forms next to the census, with exact-match flags.
    Compare {
        #[command(flatten)]
        instance: InstanceArgs,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Recompute the table of group algebras with P >= 0.1.
    Table1 {
        #[command(flatten)]
        run: RunArgs,
    },
    /// Classify a sweep of group algebras against a threshold.
    Catalog {
        /// Threshold as a fraction, e.g. 1/4.
        #[arg(long, default_value = "1/4", value_parser = parse_ratio)]
        threshold: Probability,
        /// Largest ring order q^n in the cyclic sweep.
        #[arg(long, default_value_t = 1024)]
        max_size: u64,
        #[arg(long, value_parser = parse_side, default_value = "twosided")]
        side: Side,
        #[command(flatten)]
        run: RunArgs,
    },
}

#[derive(Args)]
struct InstanceArgs {
    /// Coefficients: F:p^m, F:q or Z:n.
    #[arg(long, value_parser = parse_coeff)]
    coeff: CoeffSpec,
    /// Group: C:n, AxB, S3, Q8 or @table.json.
    #[arg(long, value_parser = parse_group)]
    group: GroupSpec,
    #[arg(long, value_parser = parse_side, default_value = "left")]
    side: Side,
}

#[derive(Args)]
struct RunArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Largest number of ring elements a census may visit.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    max_elements: Option<u64>,
    /// Largest number of pairs a naive count may visit.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    max_pairs: Option<u64>,
    /// Worker threads; defaults to the available parallelism.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    workers: Option<u64>,
}

impl RunArgs {
    fn caps(&self) -> Caps {
        let d = Caps::default();
        Caps {
            max_elements: self.max_elements.unwrap_or(d.max_elements),
            max_pairs: self.max_pairs.unwrap_or(d.max_pairs),
        }
    }

    fn workers(&self) -> Option<usize> {
        self.workers.map(|w| w as usize)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VariantArg {
    Printed,
    Derived,
    Both,
}

fn parse_coeff(s: &str) -> Result<CoeffSpec, String> {
    s.parse().map_err(|e: nullity::Error| e.to_string())
}

fn parse_group(s: &str) -> Result<GroupSpec, String> {
    s.parse().map_err(|e: nullity::Error| e.to_string())
}

fn parse_side(s: &str) -> Result<Side, String> {
    s.parse().map_err(|e: nullity::Error| e.to_string())
}

fn parse_ratio(s: &str) -> Result<Probability, String> {
    s.trim()
        .parse::<Probability>()
        .map_err(|e| format!("bad fraction {s:?}: {e}"))
}

struct Outcome {
    stdout: String,
    unexpected: bool,
}

fn ratio_json(r: &Probability) -> Value {
    json!(RatioJson::from(r))
}

fn show(r: &Probability) -> String {
    format!("{} ~ {}", format_ratio(r), format_decimal(r, 6))
}

fn select_variants(forms: Vec<FormulaResult>, variant: VariantArg) -> Vec<FormulaResult> {
    if forms.len() <= 1 || variant == VariantArg::Both {
        return forms;
    }
    let want = match variant {
        VariantArg::Printed => Variant::Printed,
        _ => Variant::Derived,
    };
    forms.into_iter().filter(|f| f.variant == want).collect()
}

fn render_compare(report: &CompareReport) -> String {
    let mut out = format!("{}, side {}\n", report.instance, report.side);
    out += &format!("  {:<8} {} ~ {}\n", "oracle", format_json_ratio(&report.oracle), report.oracle_decimal);
    for f in &report.formulas {
        let verdict = match (&f.matches_oracle, &f.erratum) {
            (true, _) => "match".to_string(),
            (false, Some(id)) => format!("mismatch, known erratum {id}"),
            (false, None) => "MISMATCH".to_string(),
        };
        out += &format!(
            "  {:<8} {} ~ {}  {}  ({})\n",
            f.variant.to_string(),
            format_json_ratio(&f.value),
            f.decimal,
            verdict,
            f.provenance
        );
    }
    out
}

fn format_json_ratio(r: &RatioJson) -> String {
    format!("{}/{}", r.num, r.den)
}

fn render_table(rows: &[TableRow]) -> String {
    let mut out = format!(
        "{:>3}  {:<14} {:<20} {:<28} {:<28} {}\n",
        "n", "algebra", "printed", "census ab=0", "census ab=ba=0", "status"
    );
    for r in rows {
        let status = match &r.erratum {
            Some(id) => format!("{} ({id})", r.status.as_str()),
            None => r.status.as_str().to_string(),
        };
        out += &format!(
            "{:>3}  {:<14} {:<20} {:<28} {:<28} {}\n",
            r.row,
            r.instance,
            format!("{} ~ {}", format_json_ratio(&r.printed_fraction), r.printed_decimal),
            format!("{} ~ {}", format_json_ratio(&r.oracle_left), r.oracle_left_decimal),
            format!("{} ~ {}", format_json_ratio(&r.oracle_twosided), r.oracle_twosided_decimal),
            status
        );
    }
    out
}

fn render_catalog(c: &Classification, max_size: u64) -> String {
    let mut out = format!(
        "threshold {}, side {}, cyclic sweep q^n <= {max_size}: {} evaluated, {} skipped\n",
        show(&c.threshold),
        c.side,
        c.evaluated.len(),
        c.skipped.len()
    );
    let mut selected: Vec<_> = c.selected().collect();
    selected.sort_by(|a, b| b.probability.cmp(&a.probability));
    for s in selected {
        out += &format!("  {:<14} {}\n", s.instance.to_string(), show(&s.probability));
    }
    let (lo, hi) = c.gap();
    if let Some(lo) = lo {
        out += &format!("lowest selected: {} {}\n", lo.instance, show(&lo.probability));
    }
    if let Some(hi) = hi {
        out += &format!("highest below:   {} {}\n", hi.instance, show(&hi.probability));
    }
    for s in &c.skipped {
        out += &format!("skipped {}: {}\n", s.instance, s.reason);
    }
    out
}

fn run(cli: Cli) -> nullity::Result<Outcome> {
    let ok = |stdout: String| Outcome {
        stdout,
        unexpected: false,
    };
    match cli.command {
        Command::Oracle {
            instance,
            run,
            omit_timing,
        } => {
            let record = report::run_oracle(
                &instance.coeff,
                &instance.group,
                instance.side,
                &run.caps(),
                run.workers(),
                !omit_timing,
            )?;
            Ok(ok(match run.format {
                Format::Json => record.to_json(),
                Format::Text => {
                    let p = record.probability()?;
                    format!("{}\n# p ~ {}", record.to_gap(), format_decimal(&p, 6))
                }
            }))
        }
        Command::Formula {
            instance,
            variant,
            format,
        } => {
            let forms = select_variants(closed_forms(&instance.coeff, &instance.group, instance.side)?, variant);
            if forms.is_empty() {
                return Err(nullity::Error::Unsupported(format!(
                    "no closed form for {}[{}]; use `nullity oracle`",
                    instance.coeff, instance.group
                )));
            }
            Ok(ok(match format {
                Format::Json => {
                    let items: Vec<Value> = forms
                        .iter()
                        .map(|f| {
                            json!({
                                "variant": f.variant,
                                "provenance": f.provenance,
                                "value": ratio_json(&f.value),
                                "decimal": format_decimal(&f.value, 6),
                            })
                        })
                        .collect();
                    serde_json::to_string_pretty(&json!({
                        "instance": format!("{}[{}]", instance.coeff, instance.group),
                        "side": instance.side,
                        "formulas": items,
                    }))
                    .expect("json")
                }
                Format::Text => forms
                    .iter()
                    .map(|f| format!("{}  [{}] {}", show(&f.value), f.variant, f.provenance))
                    .collect::<Vec<_>>()
                    .join("\n"),
            }))
        }
        Command::Compare { instance, run } => {
            let report = report::compare(&instance.coeff, &instance.group, instance.side, &run.caps(), run.workers())?;
            let unexpected = report.unexpected_mismatches() > 0;
            let stdout = match run.format {
                Format::Json => serde_json::to_string_pretty(&json!({
                    "report": report,
                    "unexpected_mismatches": report.unexpected_mismatches(),
                }))
                .expect("json"),
                Format::Text => render_compare(&report),
            };
            Ok(Outcome { stdout, unexpected })
        }
        Command::Table1 { run } => {
            let rows = report::table1(&run.caps(), run.workers())?;
            let unexpected = rows.iter().any(|r| r.status == RowStatus::Mismatch);
            let stdout = match run.format {
                Format::Json => serde_json::to_string_pretty(&rows).expect("json"),
                Format::Text => render_table(&rows),
            };
            Ok(Outcome { stdout, unexpected })
        }
        Command::Catalog {
            threshold,
            max_size,
            side,
            run,
        } => {
            let catalog = standard_catalog(max_size);
            let c = classify_threshold(&catalog, &threshold, side, &run.caps(), run.workers());
            Ok(ok(match run.format {
                Format::Json => {
                    let (lo, hi) = c.gap();
                    serde_json::to_string_pretty(&json!({
                        "classification": c,
                        "selected": c.selected_labels(),
                        "lowest_selected": lo,
                        "highest_below": hi,
                    }))
                    .expect("json")
                }
                Format::Text => render_catalog(&c, max_size),
            }))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand) {
                e.exit();
            }
            let rendered = e.to_string();
            eprintln!("{}", rendered.lines().next().unwrap_or("error: bad arguments"));
            return ExitCode::from(2);
        }
    };
    match run(cli) {
        Ok(outcome) => {
            println!("{}", outcome.stdout.trim_end());
            if outcome.unexpected {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
