//! `bgk`: command-line front end for the Brauer G-set library. Reads the
//! versioned JSON interchange format, dispatches to the library, and prints
//! JSON (default) or DOT. Exit codes: 0 success, 1 domain error, 2 usage
//! error.

use std::collections::BTreeMap;
use std::io::Read;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::json;

use bgk_core::algebra::{
    algebra_dimension, dtr_string, enumerate_strings, quiver_presentation, AlgebraPresentation,
    DtrResult, Flavor, Relation, StringContext, StringWord,
};
use bgk_core::artheory::{
    exceptional_tubes, rf_ar_descriptor, riedtmann_presentation, stable_ar_summary,
};
use bgk_core::bands::{band_count, domestic_run_bound, enumerate_bands, BandCount};
use bgk_core::classify::{
    classify_rep_type, monodromy, pi1_class, pi1_presentation, reduced_pi1_abelianization,
    shape_stats, Pi1Class, RepType, RfSubcase,
};
use bgk_core::constructions::{
    are_isomorphic, construct_domestic, hat, quotient_by_nakayama, reduced_form, special_ball,
    DomesticCase,
};
use bgk_core::gset::{BrauerGSet, HalfEdge, RawGSet};

/// Versioned JSON document describing a Brauer G-set.
#[derive(Clone, Debug, Serialize, Deserialize)]
struct InterchangeDocument {
    schema: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    comment: Option<String>,
    half_edges: Vec<String>,
    g: BTreeMap<String, String>,
    #[serde(rename = "U")]
    u: Vec<String>,
    tau: BTreeMap<String, String>,
    degree: BTreeMap<String, u32>,
}

const SCHEMA: &str = "bgk/1";

impl InterchangeDocument {
    fn to_raw(&self) -> RawGSet {
        RawGSet {
            half_edges: self.half_edges.clone(),
            g: self.g.clone(),
            u: self.u.clone(),
            tau: self.tau.clone(),
            degree: self.degree.clone(),
        }
    }

    fn from_gset(gset: &BrauerGSet, name: Option<String>) -> InterchangeDocument {
        let raw = gset.to_raw();
        InterchangeDocument {
            schema: SCHEMA.into(),
            name,
            comment: None,
            half_edges: raw.half_edges,
            g: raw.g,
            u: raw.u,
            tau: raw.tau,
            degree: raw.degree,
        }
    }
}

#[derive(Parser)]
#[command(name = "bgk", about = "Brauer G-set toolkit", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FlavorArg {
    Full,
    Reduced,
    String,
    Riedtmann,
}

#[derive(Subcommand)]
enum Command {
    /// Check the axioms and report the derived flags.
    Validate { input: String },
    /// Vertex, edge and double counts with f-degrees.
    Stats { input: String },
    /// Quotient by the Nakayama automorphism.
    Quotient { input: String },
    /// Double the half-edge set so tau becomes fixed-point free.
    Hat { input: String },
    /// Reduced form (a Brauer graph with the same representation type).
    Reduce { input: String },
    /// Build the explicit domestic family member over a base graph.
    Construct {
        input: String,
        #[arg(long)]
        case: u8,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        l: Option<usize>,
    },
    /// Search for an isomorphism between two sets.
    Iso { left: String, right: String },
    /// Enumerate band classes up to the run-count bound (default: the
    /// domestic completeness bound, capped at 16).
    Bands {
        input: String,
        #[arg(long)]
        max_period: Option<usize>,
        /// Also report the exact count (finite or infinite).
        #[arg(long)]
        count: bool,
    },
    /// Exact representation type of the algebra.
    Classify { input: String },
    /// Fundamental-group data.
    Pi1 {
        #[command(subcommand)]
        what: Pi1Command,
    },
    /// Action of the quotient fundamental group on the covering fiber.
    Monodromy {
        input: String,
        #[arg(long)]
        base: Option<String>,
    },
    /// Quiver and relations of the algebra.
    Algebra {
        input: String,
        #[arg(long, value_enum, default_value = "reduced")]
        flavor: FlavorArg,
        #[arg(long)]
        dot: bool,
    },
    /// Enumerate canonical strings of the string-algebra quotient.
    Strings {
        input: String,
        #[arg(long, default_value_t = 8)]
        max_len: usize,
    },
    /// AR-translate of the mouth string of a half-edge.
    Dtr {
        input: String,
        #[arg(long)]
        mouth: String,
    },
    /// Exceptional tube ranks.
    Tubes { input: String },
    /// Census of the stable AR-components of a domestic algebra.
    ArSummary {
        input: String,
        #[arg(long)]
        dot: bool,
    },
    /// Translation-quiver descriptor of a representation-finite algebra.
    ArDescriptor { input: String },
    /// Truncated ball of the special-walk universal cover.
    Ball {
        input: String,
        #[arg(long)]
        base: String,
        #[arg(long, default_value_t = 2)]
        radius: usize,
    },
}

#[derive(Subcommand)]
enum Pi1Command {
    /// Generators, relators and representative walks.
    Presentation { input: String },
    /// Invariant factors of the abelianized reduced fundamental group.
    Abelian { input: String },
    /// Class of the fundamental group, read off the representation type.
    Class { input: String },
}

fn read_document(path: &str) -> Result<InterchangeDocument, String> {
    let text = if path == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf).map_err(|e| format!("stdin: {e}"))?;
        buf
    } else {
        std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?
    };
    let doc: InterchangeDocument =
        serde_json::from_str(&text).map_err(|e| format!("{path}: invalid JSON: {e}"))?;
    if doc.schema != SCHEMA {
        return Err(format!("{path}: unsupported schema {:?}, expected {SCHEMA:?}", doc.schema));
    }
    Ok(doc)
}

fn load_gset(path: &str) -> Result<BrauerGSet, CliError> {
    let doc = read_document(path).map_err(CliError::Usage)?;
    BrauerGSet::new(doc.to_raw()).map_err(|e| CliError::Domain(e.to_string()))
}

enum CliError {
    Usage(String),
    Domain(String),
}

impl From<bgk_core::Error> for CliError {
    fn from(e: bgk_core::Error) -> CliError {
        CliError::Domain(e.to_string())
    }
}

fn emit(value: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(value).expect("serializable"));
}

fn gset_json(gset: &BrauerGSet, name: Option<String>) -> serde_json::Value {
    serde_json::to_value(InterchangeDocument::from_gset(gset, name)).expect("serializable")
}

fn rep_type_json(rep: &RepType) -> serde_json::Value {
    match rep {
        RepType::RepFinite { subcase, exceptional_multiplicity, nakayama_order } => json!({
            "type": "rep_finite",
            "subcase": match subcase {
                RfSubcase::TreeQuotient => "tree",
                RfSubcase::DoubleQuotient => "double",
            },
            "m": exceptional_multiplicity,
            "nakayama_order": nakayama_order,
        }),
        RepType::Domestic(p) => {
            let mut v = json!({"type": "domestic", "case": p.case, "r": p.r});
            if let Some(c3) = &p.case3 {
                v["m"] = json!(c3.m);
                v["p"] = json!(c3.p);
                v["q"] = json!(c3.q);
                v["l"] = json!(c3.l);
            }
            v
        }
        RepType::NonDomesticTame => json!({"type": "non_domestic_tame"}),
    }
}

fn presentation_json(pres: &AlgebraPresentation) -> serde_json::Value {
    let relations: Vec<serde_json::Value> = pres
        .relations
        .iter()
        .map(|r| match r {
            Relation::Zero(p) => json!({"zero": pres.arrow_path_text(p)}),
            Relation::Equal(p, q) => {
                json!({"equal": [pres.arrow_path_text(p), pres.arrow_path_text(q)]})
            }
        })
        .collect();
    json!({
        "schema": SCHEMA,
        "flavor": format!("{:?}", pres.flavor).to_lowercase(),
        "vertices": pres.vertices,
        "arrows": pres.arrows.iter().map(|a| json!({
            "name": a.name,
            "source": pres.vertices[a.source],
            "target": pres.vertices[a.target],
        })).collect::<Vec<_>>(),
        "relations": relations,
        "degenerate": pres.degenerate,
    })
}

fn presentation_dot(pres: &AlgebraPresentation) -> String {
    let mut out = String::from("digraph quiver {\n");
    out.push_str("  node [shape=box];\n");
    for (i, v) in pres.vertices.iter().enumerate() {
        out.push_str(&format!("  v{i} [label=\"{v}\"];\n"));
    }
    for a in &pres.arrows {
        out.push_str(&format!("  v{} -> v{} [label=\"{}\"];\n", a.source, a.target, a.name));
    }
    out.push_str("  /* relations:\n");
    for r in &pres.relations {
        match r {
            Relation::Zero(p) => out.push_str(&format!("     0 = {}\n", pres.arrow_path_text(p))),
            Relation::Equal(p, q) => out.push_str(&format!(
                "     {} = {}\n",
                pres.arrow_path_text(p),
                pres.arrow_path_text(q)
            )),
        }
    }
    out.push_str("  */\n}\n");
    out
}

fn string_json(ctx: &StringContext, w: &StringWord) -> serde_json::Value {
    json!({
        "source": ctx.pres.vertices[w.source],
        "word": w.text(&ctx.pres),
        "length": w.len(),
    })
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Validate { input } => {
            let doc = read_document(&input).map_err(CliError::Usage)?;
            let report = BrauerGSet::validate_raw(&doc.to_raw());
            emit(&json!({
                "schema": SCHEMA,
                "valid": report.is_valid(),
                "fms_bg": report.is_fms_bg,
                "modified_bg": report.is_modified_bg,
                "malformed": report.malformed,
                "violations": report.violations,
            }));
            Ok(())
        }
        Command::Stats { input } => {
            let gset = load_gset(&input)?;
            let stats = gset.vertex_stats();
            let mut value = serde_json::to_value(&stats).expect("serializable");
            value["schema"] = json!(SCHEMA);
            if gset.is_modified_bg() {
                let shape = shape_stats(&gset)?;
                value["shape"] = serde_json::to_value(&shape).expect("serializable");
            }
            let (_, order) = gset.nakayama();
            value["nakayama_order"] = json!(order);
            emit(&value);
            Ok(())
        }
        Command::Quotient { input } => {
            let gset = load_gset(&input)?;
            let (q, cov) = quotient_by_nakayama(&gset)?;
            let mut value = gset_json(&q, Some("quotient".into()));
            let map: BTreeMap<String, String> = gset
                .half_edges()
                .map(|h| (gset.name(h).to_string(), q.name(cov.apply(h)).to_string()))
                .collect();
            value["projection"] = json!(map);
            emit(&value);
            Ok(())
        }
        Command::Hat { input } => {
            let gset = load_gset(&input)?;
            let (h, _) = hat(&gset)?;
            emit(&gset_json(&h, Some("hat".into())));
            Ok(())
        }
        Command::Reduce { input } => {
            let gset = load_gset(&input)?;
            let r = reduced_form(&gset)?;
            emit(&gset_json(&r, Some("reduced".into())));
            Ok(())
        }
        Command::Construct { input, case, r, l } => {
            let base = load_gset(&input)?;
            let case = match case {
                1 => DomesticCase::One,
                2 => DomesticCase::Two,
                3 => DomesticCase::Three,
                other => {
                    return Err(CliError::Usage(format!("unknown case {other}, expected 1..3")))
                }
            };
            let e = construct_domestic(&base, case, r, l)?;
            emit(&gset_json(&e, Some("constructed".into())));
            Ok(())
        }
        Command::Iso { left, right } => {
            let a = load_gset(&left)?;
            let b = load_gset(&right)?;
            match are_isomorphic(&a, &b) {
                Some(iso) => {
                    let map: BTreeMap<String, String> = a
                        .half_edges()
                        .map(|h| (a.name(h).to_string(), b.name(iso.apply(h)).to_string()))
                        .collect();
                    emit(&json!({"schema": SCHEMA, "isomorphic": true, "witness": map}));
                }
                None => emit(&json!({"schema": SCHEMA, "isomorphic": false})),
            }
            Ok(())
        }
        Command::Bands { input, max_period, count } => {
            let gset = load_gset(&input)?;
            let bound = max_period.unwrap_or_else(|| domestic_run_bound(&gset).min(16));
            let classes = enumerate_bands(&gset, bound);
            let mut value = json!({
                "schema": SCHEMA,
                "max_period": bound,
                "classes": classes.iter().map(|c| c.describe(&gset)).collect::<Vec<_>>(),
            });
            if count {
                value["count"] = match band_count(&gset)? {
                    BandCount::Finite(n) => json!({"finite": n}),
                    BandCount::Infinite => json!("infinite"),
                };
            }
            emit(&value);
            Ok(())
        }
        Command::Classify { input } => {
            let gset = load_gset(&input)?;
            let rep = classify_rep_type(&gset)?;
            let mut value = rep_type_json(&rep);
            value["schema"] = json!(SCHEMA);
            emit(&value);
            Ok(())
        }
        Command::Pi1 { what } => {
            match what {
                Pi1Command::Presentation { input } => {
                    let gset = load_gset(&input)?;
                    let pres = pi1_presentation(&gset)?;
                    emit(&json!({
                        "schema": SCHEMA,
                        "base": gset.name(pres.base),
                        "generators": pres.generators,
                        "relators": pres
                            .relators
                            .iter()
                            .map(|r| pres.relator_text(r))
                            .collect::<Vec<_>>(),
                        "walks": pres.walks.iter().map(|w| w.to_text(&gset)).collect::<Vec<_>>(),
                        "display": pres.simplified_text(),
                    }));
                }
                Pi1Command::Abelian { input } => {
                    let gset = load_gset(&input)?;
                    let inv = reduced_pi1_abelianization(&gset)?;
                    emit(&json!({
                        "schema": SCHEMA,
                        "free_rank": inv.free_rank,
                        "torsion": inv.torsion,
                    }));
                }
                Pi1Command::Class { input } => {
                    let gset = load_gset(&input)?;
                    let class = pi1_class(&gset)?;
                    let tag = match class {
                        Pi1Class::Z => "Z",
                        Pi1Class::AmalgamA2B2 => "amalgam_a2_b2",
                        Pi1Class::ZxZ => "z_x_z",
                        Pi1Class::Other => "other",
                    };
                    emit(&json!({"schema": SCHEMA, "class": tag}));
                }
            }
            Ok(())
        }
        Command::Monodromy { input, base } => {
            let gset = load_gset(&input)?;
            let (b, cov) = quotient_by_nakayama(&gset)?;
            let base = match base {
                Some(name) => b.lookup(&name).ok_or_else(|| {
                    CliError::Usage(format!("no half-edge {name:?} in the quotient"))
                })?,
                None => HalfEdge(0),
            };
            let act = monodromy(&cov, base)?;
            emit(&json!({
                "schema": SCHEMA,
                "base": b.name(act.base),
                "fiber": act.fiber.iter().map(|&h| gset.name(h)).collect::<Vec<_>>(),
                "generators": act.generators,
                "walks": act.walks.iter().map(|w| w.to_text(&b)).collect::<Vec<_>>(),
                "permutations": act.perms,
                "transitive": act.is_transitive(),
            }));
            Ok(())
        }
        Command::Algebra { input, flavor, dot } => {
            let gset = load_gset(&input)?;
            let pres = match flavor {
                FlavorArg::Full => quiver_presentation(&gset, Flavor::Full)?,
                FlavorArg::Reduced => quiver_presentation(&gset, Flavor::Reduced)?,
                FlavorArg::String => quiver_presentation(&gset, Flavor::StringAlgebra)?,
                FlavorArg::Riedtmann => {
                    let desc = rf_ar_descriptor(&gset)?;
                    riedtmann_presentation(&desc)?
                }
            };
            if dot {
                print!("{}", presentation_dot(&pres));
            } else {
                let mut value = presentation_json(&pres);
                if flavor != FlavorArg::Riedtmann {
                    value["dimension"] = json!(algebra_dimension(&gset)?);
                }
                emit(&value);
            }
            Ok(())
        }
        Command::Strings { input, max_len } => {
            let gset = load_gset(&input)?;
            let ctx = StringContext::new(&gset)?;
            let en = enumerate_strings(&ctx.data, max_len);
            emit(&json!({
                "schema": SCHEMA,
                "max_len": max_len,
                "saturated": en.saturated,
                "counts_by_length": en.counts_by_length,
                "strings": en.strings.iter().map(|w| string_json(&ctx, w)).collect::<Vec<_>>(),
            }));
            Ok(())
        }
        Command::Dtr { input, mouth } => {
            let gset = load_gset(&input)?;
            let ctx = StringContext::new(&gset)?;
            let h = gset
                .lookup(&mouth)
                .ok_or_else(|| CliError::Usage(format!("no half-edge {mouth:?}")))?;
            let m = ctx.mouth_string(h);
            let result = dtr_string(&ctx, &m)?;
            let (kind, translate) = match &result {
                DtrResult::String(w) => ("regular", w),
                DtrResult::ProjectiveQuotient { translate, .. } => {
                    ("projective_quotient", translate)
                }
            };
            emit(&json!({
                "schema": SCHEMA,
                "input": string_json(&ctx, &m),
                "kind": kind,
                "translate": string_json(&ctx, translate),
            }));
            Ok(())
        }
        Command::Tubes { input } => {
            let gset = load_gset(&input)?;
            let ranks = exceptional_tubes(&gset)?;
            emit(&json!({
                "schema": SCHEMA,
                "tubes": ranks
                    .iter()
                    .map(|(rank, count)| json!({"rank": rank, "count": count}))
                    .collect::<Vec<_>>(),
            }));
            Ok(())
        }
        Command::ArSummary { input, dot } => {
            let gset = load_gset(&input)?;
            let summary = stable_ar_summary(&gset)?;
            if dot {
                let mut out = String::from("graph components {\n  node [shape=ellipse];\n");
                let mut idx = 0usize;
                for &(rank, count) in &summary.tube_ranks {
                    for _ in 0..count {
                        out.push_str(&format!("  c{idx} [label=\"ZA_inf / tau^{rank}\"];\n"));
                        idx += 1;
                    }
                }
                for &(p, q, count) in &summary.za_tilde {
                    for _ in 0..count {
                        out.push_str(&format!("  c{idx} [label=\"ZA~_{{{p},{q}}}\"];\n"));
                        idx += 1;
                    }
                }
                out.push_str("  homogeneous [label=\"ZA_inf / tau (infinite family)\"];\n}\n");
                print!("{out}");
            } else {
                let mut value = serde_json::to_value(&summary).expect("serializable");
                value["schema"] = json!(SCHEMA);
                emit(&value);
            }
            Ok(())
        }
        Command::ArDescriptor { input } => {
            let gset = load_gset(&input)?;
            let desc = rf_ar_descriptor(&gset)?;
            let mut value = serde_json::to_value(&desc).expect("serializable");
            value["schema"] = json!(SCHEMA);
            value["display"] = json!(desc.text());
            value["stable_vertices"] = json!(desc.stable_vertex_count());
            emit(&value);
            Ok(())
        }
        Command::Ball { input, base, radius } => {
            let gset = load_gset(&input)?;
            let h = gset
                .lookup(&base)
                .ok_or_else(|| CliError::Usage(format!("no half-edge {base:?}")))?;
            let ball = special_ball(&gset, h, radius)?;
            let mut value = gset_json(&ball.ball, Some("ball".into()));
            let eval: BTreeMap<String, String> = ball
                .ball
                .half_edges()
                .map(|w| (ball.ball.name(w).to_string(), gset.name(ball.eval[w.0]).to_string()))
                .collect();
            value["evaluation"] = json!(eval);
            value["interior"] = json!(ball
                .ball
                .half_edges()
                .filter(|&w| ball.interior[w.0])
                .map(|w| ball.ball.name(w).to_string())
                .collect::<Vec<_>>());
            emit(&value);
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
    }
}
