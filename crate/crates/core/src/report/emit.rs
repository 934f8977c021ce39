//! CSV and Markdown renderings of table artifacts and sweeps.

use std::fmt::Write as _;
use std::io::Write;
use std::str::FromStr;

use super::{ComparisonRow, TableArtifact, TableId};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Csv,
    Markdown,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "csv" => Ok(Self::Csv),
            "md" | "markdown" => Ok(Self::Markdown),
            _ => Err(Error::InvalidArgument(format!("unknown format {s:?}; expected csv or md"))),
        }
    }
}

/// Nine significant digits in scientific notation.
pub fn sig9(x: f64) -> String {
    format!("{x:.8e}")
}

fn opt9(x: Option<f64>) -> String {
    x.map(sig9).unwrap_or_default()
}

fn csv_err(e: csv::Error) -> Error {
    Error::Io(e.into())
}

pub fn emit_table<W: Write>(artifact: &TableArtifact, format: Format, out: W) -> Result<()> {
    match format {
        Format::Csv => table_csv(artifact, out),
        Format::Markdown => {
            let mut out = out;
            out.write_all(table_markdown(artifact).as_bytes())?;
            Ok(())
        }
    }
}

pub fn emit_scan<W: Write>(rows: &[ComparisonRow], format: Format, out: W) -> Result<()> {
    match format {
        Format::Csv => scan_csv(rows, out),
        Format::Markdown => {
            let mut out = out;
            out.write_all(scan_markdown(rows).as_bytes())?;
            Ok(())
        }
    }
}

fn table_csv<W: Write>(artifact: &TableArtifact, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let id = artifact.id();
    let keys: &[&str] = match id {
        TableId::T1 | TableId::T2 => &["delta"],
        TableId::T3 | TableId::T4 => &["state", "delta"],
        TableId::T5 => &["G", "state"],
        TableId::T6 => &["A", "l", "n"],
    };
    let header: Vec<&str> = keys.iter().copied().chain(["E_paper", "E_computed", "diff"]).collect();
    w.write_record(&header).map_err(csv_err)?;
    for row in &artifact.rows {
        let c = &row.cell;
        let mut rec: Vec<String> = match id {
            TableId::T1 | TableId::T2 => vec![c.parameter.to_string()],
            TableId::T3 | TableId::T4 => vec![state_name(c.state), c.parameter.to_string()],
            TableId::T5 => vec![c.parameter.to_string(), state_name(c.state)],
            TableId::T6 => vec![c.strength.to_string(), c.state.ell.to_string(), c.state.n.to_string()],
        };
        rec.extend([sig9(c.value), sig9(row.computed()), sig9(row.diff)]);
        w.write_record(&rec).map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}

fn state_name(s: crate::model::QuantumState) -> String {
    s.label().unwrap_or_else(|| s.to_string())
}

fn table_markdown(a: &TableArtifact) -> String {
    let id = a.id();
    let def = &a.definition;
    let mut s = String::new();
    let _ = writeln!(s, "{id} (variant {}, gate {:.0e})\n", a.variant, a.gate);
    match id {
        TableId::T1 | TableId::T2 | TableId::T3 | TableId::T4 => {
            let lead: &[&str] = if matches!(id, TableId::T1 | TableId::T2) { &["δ"] } else { &["State", "δ"] };
            let head: Vec<&str> = lead
                .iter()
                .copied()
                .chain(def.comparison_labels.iter().copied())
                .chain(["E_{n,ℓ}", "computed", "diff"])
                .collect();
            push_header(&mut s, &head);
            for r in &a.rows {
                let c = &r.cell;
                let mut cells = Vec::new();
                if lead.len() == 2 {
                    cells.push(state_name(c.state));
                }
                cells.push(format!("{}", c.parameter));
                cells.extend(c.comparisons.iter().map(|v| v.map(|x| x.to_string()).unwrap_or_default()));
                cells.push(format!("{:.7}", c.value));
                cells.push(format!("{:.7}", r.computed()));
                cells.push(format!("{:+.1e}", r.diff));
                push_row(&mut s, &cells);
            }
        }
        TableId::T5 => {
            // one line per G, "computed (printed)" per state column
            let states = def.states();
            let mut head = vec!["G".to_string()];
            head.extend(states.iter().map(|st| format!("−E_{{{},{}}} ({})", st.n, st.ell, state_name(*st))));
            head.push("max |diff|".into());
            let head_ref: Vec<&str> = head.iter().map(String::as_str).collect();
            push_header(&mut s, &head_ref);
            for g in def.parameters() {
                let rows: Vec<_> = a.rows.iter().filter(|r| r.cell.parameter == g).collect();
                let mut cells = vec![format!("{g}")];
                cells.extend(rows.iter().map(|r| format!("{:.7} ({:.7})", -r.computed(), -r.cell.value)));
                cells.push(format!("{:.1e}", rows.iter().fold(0.0f64, |m, r| m.max(r.diff.abs()))));
                push_row(&mut s, &cells);
            }
        }
        TableId::T6 => {
            push_header(&mut s, &["A", "ℓ", "n", "−E (printed)", "−E (computed)", "diff"]);
            for r in &a.rows {
                let c = &r.cell;
                push_row(
                    &mut s,
                    &[
                        format!("{}", c.strength),
                        c.state.ell.to_string(),
                        c.state.n.to_string(),
                        format!("{:.6}", -c.value),
                        format!("{:.6}", -r.computed()),
                        format!("{:+.1e}", r.diff),
                    ],
                );
            }
        }
    }
    s
}

fn push_header(s: &mut String, cols: &[&str]) {
    let _ = writeln!(s, "| {} |", cols.join(" | "));
    let _ = writeln!(s, "|{}", "---|".repeat(cols.len()));
}

fn push_row(s: &mut String, cells: &[String]) {
    let _ = writeln!(s, "| {} |", cells.join(" | "));
}

const SCAN_HEADER: [&str; 10] = [
    "state",
    "delta",
    "E_analytic",
    "E_quadrature",
    "E_oracle",
    "E_paper",
    "d_quadrature",
    "d_oracle",
    "d_paper",
    "oracle_status",
];

fn scan_csv<W: Write>(rows: &[ComparisonRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(SCAN_HEADER).map_err(csv_err)?;
    for r in rows {
        w.write_record([
            state_name(r.state),
            r.delta.to_string(),
            sig9(r.analytic),
            sig9(r.quadrature),
            opt9(r.oracle),
            opt9(r.paper),
            sig9(r.quadrature_diff),
            opt9(r.oracle_diff),
            opt9(r.paper_diff),
            r.oracle_error.clone().unwrap_or_default(),
        ])
        .map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}

fn scan_markdown(rows: &[ComparisonRow]) -> String {
    let mut s = String::new();
    push_header(
        &mut s,
        &["state", "δ", "analytic", "quadrature", "oracle", "printed", "quad − analytic", "oracle − analytic"],
    );
    let fixed = |x: Option<f64>| x.map(|v| format!("{v:.9}")).unwrap_or_else(|| "–".into());
    let small = |x: Option<f64>| x.map(|v| format!("{v:+.2e}")).unwrap_or_else(|| "–".into());
    for r in rows {
        let oracle = match (&r.oracle, &r.oracle_error) {
            (Some(v), _) => format!("{v:.9}"),
            (None, Some(e)) => format!("({e})"),
            (None, None) => "–".into(),
        };
        push_row(
            &mut s,
            &[
                state_name(r.state),
                format!("{}", r.delta),
                format!("{:.9}", r.analytic),
                format!("{:.9}", r.quadrature),
                oracle,
                fixed(r.paper),
                small(Some(r.quadrature_diff)),
                small(r.oracle_diff),
            ],
        );
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{QuantumState, SecondOrderVariant, UnitSystem};
    use crate::report::{reproduce_table, scan_delta, ScanRequest};

    fn render(a: &TableArtifact, f: Format) -> String {
        let mut buf = Vec::new();
        emit_table(a, f, &mut buf).unwrap();
        String::from_utf8(buf).unwrap()
    }

    #[test]
    fn first_table_csv_header() {
        let t1 = reproduce_table(TableId::T1).unwrap();
        let text = render(&t1, Format::Csv);
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("delta,E_paper,E_computed,diff"));
        assert_eq!(text.lines().count(), 11);
        assert!(lines.next().unwrap().starts_with("0.01,-4.90000900e-1,"));
    }

    #[test]
    fn nine_significant_digits() {
        assert_eq!(sig9(-0.4008785), "-4.00878500e-1");
        assert_eq!(sig9(139.20131), "1.39201310e2");
        assert_eq!(sig9(0.0), "0.00000000e0");
    }

    #[test]
    fn sixth_table_markdown_columns() {
        let t6 = reproduce_table(TableId::T6).unwrap();
        let md = render(&t6, Format::Markdown);
        let header = md.lines().find(|l| l.starts_with("| A |")).unwrap();
        for col in ["A", "ℓ", "n", "−E"] {
            assert!(header.contains(col), "{col} missing from {header}");
        }
        assert!(md.contains("| 24 | 1 | 2 | 4.412177 |"));
    }

    #[test]
    fn empty_table_is_header_only() {
        let mut t1 = reproduce_table(TableId::T1).unwrap();
        t1.rows.clear();
        assert_eq!(render(&t1, Format::Csv), "delta,E_paper,E_computed,diff\n");
        let mut buf = Vec::new();
        emit_scan(&[], Format::Csv, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap().lines().count(), 1);
    }

    #[test]
    fn output_is_deterministic() {
        for id in TableId::ALL {
            for f in [Format::Csv, Format::Markdown] {
                let a = render(&reproduce_table(id).unwrap(), f);
                let b = render(&reproduce_table(id).unwrap(), f);
                assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn scan_renderings() {
        let rows = scan_delta(&ScanRequest {
            state: QuantumState::new(0, 0),
            strength: 1.0,
            units: UnitSystem::atomic(),
            delta_start: 0.0,
            delta_end: 0.1,
            steps: 3,
            with_oracle: false,
            variant: SecondOrderVariant::default(),
        })
        .unwrap();
        let mut buf = Vec::new();
        emit_scan(&rows, Format::Csv, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().next().unwrap(), SCAN_HEADER.join(","));
        assert_eq!(text.lines().count(), 4);
        let mut buf = Vec::new();
        emit_scan(&rows, Format::Markdown, &mut buf).unwrap();
        assert!(String::from_utf8(buf).unwrap().contains("| 1s | 0.05 |"));
    }

    #[test]
    fn format_parsing() {
        assert_eq!("md".parse::<Format>().unwrap(), Format::Markdown);
        assert_eq!("CSV".parse::<Format>().unwrap(), Format::Csv);
        assert!("xml".parse::<Format>().is_err());
    }
}
