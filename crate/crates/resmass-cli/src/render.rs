//! Report rendering: canonical JSON, flat CSV, or a readable markdown
//! summary. Floats print with 12 significant digits outside of JSON.

use crate::report::{Payload, Report};

/// 12 significant digits.
pub fn sig(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    format!("{x:.11e}")
}

pub fn to_json(report: &Report) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("report serializes");
    s.push('\n');
    s
}

pub fn to_csv(report: &Report) -> String {
    let mut out = String::new();
    match &report.payload {
        Payload::Newton(p) => {
            out.push_str("quantity,value\n");
            out.push_str(&format!("newton_number,{}\n", pair_str(&p.newton_number)));
            out.push_str(&format!("simplex_bound,{}\n", pair_str(&p.simplex_bound)));
            out.push_str(&format!("standard_bound,{}\n", pair_str(&p.standard_bound)));
            out.push_str(&format!("upper_bound,{}\n", pair_str(&p.upper_bound)));
            out.push_str(&format!(
                "triangulation_simplices,{}\n",
                p.triangulation_simplices
            ));
        }
        Payload::Lelong(p) => {
            out.push_str("weight,lelong_number\n");
            for v in &p.values {
                out.push_str(&format!(
                    "\"{}\",{}\n",
                    pairs_str(&v.weight),
                    pair_str(&v.lelong_number)
                ));
            }
        }
        Payload::Mixed(p) => {
            out.push_str("subset,newton_number\n");
            for t in &p.terms {
                let subset: Vec<String> = t.subset.iter().map(usize::to_string).collect();
                out.push_str(&format!(
                    "\"{}\",{}\n",
                    subset.join(" "),
                    pair_str(&t.newton_number)
                ));
            }
            out.push_str(&format!("value,{}\n", pair_str(&p.value)));
        }
        Payload::Milnor(p) => {
            out.push_str("weight,bound\n");
            for v in &p.per_weight {
                out.push_str(&format!("\"{}\",{}\n", pairs_str(&v.weight), pair_str(&v.bound)));
            }
            out.push_str(&format!(
                "best \"{}\",{}\n",
                pairs_str(&p.best.weight),
                pair_str(&p.best.bound)
            ));
        }
        Payload::Bounds(p) => {
            out.push_str("weight,product_bound\n");
            for row in &p.sweep {
                out.push_str(&format!(
                    "\"{}\",{}\n",
                    pairs_str(&row.weight),
                    pair_str(&row.product_bound)
                ));
            }
        }
        Payload::Estimate(p) => {
            out.push_str("weight,parameter,sampled,reference,relative_error,std_error\n");
            for e in &p.estimates {
                for r in &e.table {
                    out.push_str(&format!(
                        "\"{}\",{},{},{},{},{}\n",
                        pairs_str(&e.weight),
                        sig(r.parameter),
                        sig(r.sampled),
                        sig(r.reference),
                        sig(r.relative_error),
                        sig(r.std_error)
                    ));
                }
            }
            if let Some(t) = &p.tangent {
                for r in &t.table {
                    out.push_str(&format!(
                        "tangent,{},{},{},{},{}\n",
                        sig(r.parameter),
                        sig(r.sampled),
                        sig(r.reference),
                        sig(r.relative_error),
                        sig(r.std_error)
                    ));
                }
            }
        }
        Payload::Oracle(p) => {
            out.push_str("exact,estimate,std_error,z_score,within_four_std_errors\n");
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                sig(p.exact_volume_float),
                sig(p.estimate),
                sig(p.std_error),
                sig(p.z_score),
                p.within_four_std_errors
            ));
        }
    }
    out
}

pub fn to_markdown(report: &Report) -> String {
    let mut out = format!(
        "# resmass {} report\n\n",
        report.subcommand
    );
    match &report.payload {
        Payload::Newton(p) => {
            out.push_str("| quantity | exact | float |\n|---|---|---|\n");
            for (name, pair) in [
                ("newton number", &p.newton_number),
                ("simplex bound", &p.simplex_bound),
                ("standard bound", &p.standard_bound),
                ("upper bound", &p.upper_bound),
            ] {
                out.push_str(&format!(
                    "| {name} | {} | {} |\n",
                    pair_str(pair),
                    sig(pair_f64(pair))
                ));
            }
            out.push_str(&format!(
                "\nwitness: ({}); {} simplices; {}\n",
                pairs_str(&p.simplex_witness),
                p.triangulation_simplices,
                p.optimizer_trace
            ));
        }
        Payload::Lelong(p) => {
            out.push_str("| weight | lelong number |\n|---|---|\n");
            for v in &p.values {
                out.push_str(&format!(
                    "| ({}) | {} |\n",
                    pairs_str(&v.weight),
                    pair_str(&v.lelong_number)
                ));
            }
        }
        Payload::Mixed(p) => {
            out.push_str("| subset | newton number |\n|---|---|\n");
            for t in &p.terms {
                let subset: Vec<String> = t.subset.iter().map(usize::to_string).collect();
                out.push_str(&format!(
                    "| {{{}}} | {} |\n",
                    subset.join(", "),
                    pair_str(&t.newton_number)
                ));
            }
            out.push_str(&format!("\nmixed mass: {}", pair_str(&p.value)));
            if let Some(level) = p.regularization_level {
                out.push_str(&format!(" (stabilized at level {level})"));
            }
            out.push('\n');
        }
        Payload::Milnor(p) => {
            out.push_str("| weight | bound |\n|---|---|\n");
            for v in &p.per_weight {
                out.push_str(&format!(
                    "| ({}) | {} |\n",
                    pairs_str(&v.weight),
                    pair_str(&v.bound)
                ));
            }
            out.push_str(&format!(
                "\nbest: {} at ({})\n",
                pair_str(&p.best.bound),
                pairs_str(&p.best.weight)
            ));
        }
        Payload::Bounds(p) => {
            out.push_str("| weight | product bound |\n|---|---|\n");
            for row in &p.sweep {
                out.push_str(&format!(
                    "| ({}) | {} |\n",
                    pairs_str(&row.weight),
                    pair_str(&row.product_bound)
                ));
            }
        }
        Payload::Estimate(p) => {
            for e in &p.estimates {
                out.push_str(&format!(
                    "## weight ({})\n\nestimate {} vs exact {} (relative error {})\n\n",
                    pairs_str(&e.weight),
                    sig(e.estimate),
                    pair_str(&e.exact_index),
                    sig(e.relative_error)
                ));
                out.push_str("| parameter | sampled | reference | rel. error |\n|---|---|---|---|\n");
                for r in &e.table {
                    out.push_str(&format!(
                        "| {} | {} | {} | {} |\n",
                        r.parameter,
                        sig(r.sampled),
                        sig(r.reference),
                        sig(r.relative_error)
                    ));
                }
                out.push('\n');
            }
            if let Some(t) = &p.tangent {
                out.push_str(&format!(
                    "## tangent table at moduli {:?} (m up to {})\n\n",
                    t.point_moduli, t.m_max
                ));
                out.push_str("| m | sampled | reference | rel. error |\n|---|---|---|---|\n");
                for r in &t.table {
                    out.push_str(&format!(
                        "| {} | {} | {} | {} |\n",
                        r.parameter,
                        sig(r.sampled),
                        sig(r.reference),
                        sig(r.relative_error)
                    ));
                }
            }
        }
        Payload::Oracle(p) => {
            out.push_str(&format!(
                "exact volume {} = {}; estimate {} (std error {}, z = {}); within 4 SE: {}\n",
                pair_str(&p.exact_volume),
                sig(p.exact_volume_float),
                sig(p.estimate),
                sig(p.std_error),
                sig(p.z_score),
                p.within_four_std_errors
            ));
        }
    }
    out
}

fn pair_str(pair: &resmass_core::RatPair) -> String {
    let r = &pair.0;
    if r.denom() == &num::BigInt::from(1) {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn pairs_str(pairs: &[resmass_core::RatPair]) -> String {
    pairs
        .iter()
        .map(pair_str)
        .collect::<Vec<_>>()
        .join(",")
}

fn pair_f64(pair: &resmass_core::RatPair) -> f64 {
    resmass_core::to_f64(&pair.0)
}
