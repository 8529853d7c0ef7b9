//! CSV and JSON report output. Identical inputs give identical bytes.

use std::io::Write;

use ricf_core::theorems::{CheckReport, Sample};

pub const CSV_HEADER: [&str; 9] = [
    "theorem_id",
    "space",
    "r",
    "R",
    "c",
    "lhs",
    "rhs",
    "margin",
    "status",
];

/// 17 significant digits.
pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn opt(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}

/// `pass` or `violation`; samples evaluated under an uncertified hypothesis
/// carry an `unverified_` prefix.
pub fn status(report: &CheckReport, s: &Sample) -> &'static str {
    match (report.precondition_ok, s.is_violation()) {
        (true, false) => "pass",
        (true, true) => "violation",
        (false, false) => "unverified_pass",
        (false, true) => "unverified_violation",
    }
}

pub fn write_csv<W: Write>(reports: &[CheckReport], out: W) -> std::io::Result<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    w.write_record(CSV_HEADER)?;
    for rep in reports {
        for s in &rep.samples {
            w.write_record([
                rep.theorem.as_str().to_string(),
                rep.space.clone(),
                num(s.r),
                opt(s.big_r),
                opt(s.c),
                num(s.lhs),
                num(s.rhs),
                num(s.margin),
                status(rep, s).to_string(),
            ])?;
        }
    }
    w.flush()
}

pub fn write_json<W: Write>(reports: &[CheckReport], mut out: W) -> std::io::Result<()> {
    serde_json::to_writer_pretty(&mut out, reports)?;
    out.write_all(b"\n")
}

/// One line per report for the terminal.
pub fn summary_line(r: &CheckReport) -> String {
    let state = if !r.violations.is_empty() {
        "VIOLATION"
    } else if !r.precondition_ok {
        "PRECONDITION"
    } else {
        "pass"
    };
    format!(
        "{:<13} {:<12} {:<40} samples={:<6} min_margin={}",
        r.theorem.as_str(),
        state,
        r.space,
        r.samples.len(),
        num(r.min_margin)
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use ricf_core::theorems::{check_myers, CheckOptions};
    use ricf_core::SpaceSpec;

    #[test]
    fn empty_list_is_header_only() {
        let mut buf = Vec::new();
        write_csv(&[], &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "theorem_id,space,r,R,c,lhs,rhs,margin,status\n"
        );
    }

    #[test]
    fn myers_report_is_one_row() {
        let spec = SpaceSpec::from_builtin(
            "sphere_perturbed",
            3,
            [("eps".to_string(), 0.5)].into_iter().collect(),
        );
        let s = spec.build().unwrap().space;
        let rep = check_myers(&s, 0.75, 0.5, &CheckOptions::default()).unwrap();
        let mut buf = Vec::new();
        write_csv(&[rep], &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 2);
        assert!(lines[1].ends_with(",pass"));
        assert!(lines[1].contains("1.6407066132578"));
        assert!(!text.contains('\r'));
    }

    #[test]
    fn seventeen_digits() {
        assert_eq!(num(0.1), "1.0000000000000001e-1");
        assert_eq!(num(-2.0), "-2.0000000000000000e0");
    }
}
