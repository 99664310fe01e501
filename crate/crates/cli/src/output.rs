//! Rendering reports as text, CSV or JSON.

use std::fmt::Write as _;

use ncpoisson::report::Status;

use crate::pipeline::Report;

pub fn text(r: &Report) -> String {
    let mut s = String::new();
    let name = if r.scenario.name.is_empty() { "scenario" } else { r.scenario.name.as_str() };
    let _ = writeln!(s, "{name}: dimension {:?}, max weight {}", r.scenario.dimension, r.scenario.max_weight);
    for c in &r.checks {
        let _ = write!(s, "{:<8}{}", c.status.to_string(), c.name);
        if c.cases > 0 {
            let _ = write!(s, " ({} cases", c.cases);
            if c.failures > 0 {
                let _ = write!(s, ", {} failed", c.failures);
            }
            s.push(')');
        }
        s.push('\n');
        if let Some(w) = &c.witness {
            let _ = writeln!(s, "        witness: {w}");
        }
        if c.status != Status::Pass {
            for d in &c.details {
                let _ = writeln!(s, "        {d}");
            }
        }
    }
    if let Some(p) = &r.presentation {
        let _ = writeln!(s, "\nBRST presentation");
        for g in &p.generators {
            let _ = writeln!(s, "  d {} = {}", g.name, g.differential);
        }
        if let Some(c) = &p.charge {
            let _ = writeln!(s, "  charge = {c}");
        }
    }
    for t in &r.tables {
        let _ = write!(s, "\n{}\n{}", t.label, t.table.to_text());
    }
    s
}

/// Check summary then every table as `weight,degree,dim`, each block
/// preceded by a `# label` line.
pub fn csv(r: &Report) -> String {
    let mut s = String::from("# checks\nname,status,cases,failures\n");
    for c in &r.checks {
        let _ = writeln!(s, "\"{}\",{},{},{}", c.name.replace('"', "\"\""), c.status, c.cases, c.failures);
    }
    for t in &r.tables {
        let _ = write!(s, "# {}\n{}", t.label, t.table.to_csv());
    }
    s
}

pub fn json(r: &Report) -> String {
    serde_json::to_string_pretty(r).expect("reports serialize")
}
