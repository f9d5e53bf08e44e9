//! Command-line front end: count tables, enumeration export and oracle
//! verification.
//!
//! Exit codes: 0 success, 1 verification mismatch, 2 usage error, 3 size
//! limit exceeded.

use std::fmt::Write as _;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use lattice_census::formulas::{
    self, b1_family, b3_family, b4_family, l1_lattices, l2_lattices, l3_lattices, l4_lattices,
    three_reducible_lattices, two_reducible_blocks, two_reducible_lattices,
};
use lattice_census::oracle::{self, CensusReport, FormulaSource, OracleError};
use lattice_census::{
    as_lattice, build_poset, classify_fbb, Certificate, Count, Element, Lattice, LatticeError,
    PosetError, TwoReducibleForm,
};
use serde::{Deserialize, Serialize};

pub mod exit {
    pub const OK: u8 = 0;
    pub const MISMATCH: u8 = 1;
    pub const USAGE: u8 = 2;
    pub const SCALE: u8 = 3;
}

#[derive(Debug, Parser)]
#[command(name = "lattice-census", version, about = "Count and enumerate lattices with two or three reducible elements")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the number of lattices on `n` elements with the given number of
    /// reducible elements.
    Count {
        #[arg(long, value_parser = clap::value_parser!(u8).range(2..=3))]
        reducible: u8,
        #[arg(long)]
        n: usize,
        /// Closed form to use; only meaningful with `--reducible 2`.
        #[arg(long, value_enum)]
        form: Option<Form>,
    },
    /// Print counts for a range of sizes.
    Table {
        #[arg(long, value_parser = clap::value_parser!(u8).range(2..=3))]
        reducible: u8,
        #[arg(long)]
        n_from: usize,
        #[arg(long)]
        n_to: usize,
        #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
        format: TableFormat,
    },
    /// Print block counts per family for a range of block sizes.
    Blocks {
        #[arg(long, default_value_t = 4)]
        m_from: usize,
        #[arg(long)]
        m_to: usize,
        /// One row per (m, k) stratum instead of per-family totals.
        #[arg(long)]
        by_k: bool,
        #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
        format: TableFormat,
    },
    /// Write every lattice of the class, ordered by certificate.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long, value_parser = clap::value_parser!(u8).range(2..=3))]
        reducible: u8,
        #[arg(long, value_enum, default_value_t = EnumFormat::Json)]
        format: EnumFormat,
        /// Output file (standard output if absent).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare every closed form with the brute-force census for sizes up
    /// to `n_max`.
    Verify {
        #[arg(long)]
        n_max: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Form {
    /// Sum over the number of parts first.
    #[value(alias = "parts_first", alias = "thakare")]
    PartsFirst,
    /// Sum over the block size first.
    #[value(alias = "block_first")]
    BlockFirst,
}

impl From<Form> for TwoReducibleForm {
    fn from(f: Form) -> Self {
        match f {
            Form::PartsFirst => TwoReducibleForm::PartsFirst,
            Form::BlockFirst => TwoReducibleForm::BlockFirst,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EnumFormat {
    Json,
    Dot,
    Edges,
}

/// One lattice as exchanged on the command line.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeDocument {
    pub n: usize,
    pub covers: Vec<(Element, Element)>,
    pub red: Vec<Element>,
    pub nullity: usize,
    pub fbb: Option<String>,
}

#[derive(Debug, thiserror::Error)]
pub enum DocumentError {
    #[error("invalid document: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid cover relation: {0}")]
    Poset(#[from] PosetError),
    #[error("not a lattice: {0}")]
    Lattice(#[from] LatticeError),
}

impl LatticeDocument {
    pub fn from_lattice(l: &Lattice) -> Self {
        let p = l.digraph();
        LatticeDocument {
            n: l.len(),
            covers: p.covers().to_vec(),
            red: l.classify_elements().red.into_iter().collect(),
            nullity: p.nullity(),
            fbb: classify_fbb(l).ok().map(|c| c.to_string()),
        }
    }

    pub fn to_lattice(&self) -> Result<Lattice, DocumentError> {
        let p = build_poset(self.n, &self.covers)?;
        Ok(as_lattice(p)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("documents always serialize")
    }

    pub fn from_json(s: &str) -> Result<Self, DocumentError> {
        Ok(serde_json::from_str(s)?)
    }
}

/// Graphviz rendering with covers drawn upward and elements of equal height
/// on one rank.
pub fn to_dot(l: &Lattice, name: &str) -> String {
    let p = l.digraph();
    let heights = p.heights();
    let mut s = format!("digraph {name} {{\n  rankdir=BT;\n");
    let top = heights.iter().copied().max().unwrap_or(0);
    for h in 0..=top {
        let rank: Vec<String> = (0..l.len())
            .filter(|&x| heights[x] == h)
            .map(|x| x.to_string())
            .collect();
        let _ = writeln!(s, "  {{ rank=same; {}; }}", rank.join("; "));
    }
    for &(a, b) in p.covers() {
        let _ = writeln!(s, "  {a} -> {b};");
    }
    s.push_str("}\n");
    s
}

pub fn to_edges(l: &Lattice) -> String {
    l.digraph()
        .covers()
        .iter()
        .map(|(a, b)| format!("{a} {b}"))
        .collect::<Vec<_>>()
        .join("\n")
}

/// A failed command, with the exit code it maps to.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
    broken_pipe: bool,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: exit::USAGE,
            message: message.into(),
            broken_pipe: false,
        }
    }

    fn io(e: io::Error) -> Self {
        Failure {
            code: 1,
            message: format!("i/o error: {e}"),
            broken_pipe: e.kind() == io::ErrorKind::BrokenPipe,
        }
    }
}

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Self {
        let code = match e {
            OracleError::SizeLimitExceeded { .. } => exit::SCALE,
            OracleError::UnsupportedReducibleCount(_) => exit::USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
            broken_pipe: false,
        }
    }
}

/// Runs a parsed command. Results go to `out`, diagnostics to `err`; the
/// return value is the exit code.
pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> u8 {
    let result = match cli.command {
        Command::Count { reducible, n, form } => count(reducible, n, form, out),
        Command::Table {
            reducible,
            n_from,
            n_to,
            format,
        } => table(reducible, n_from, n_to, format, out),
        Command::Blocks {
            m_from,
            m_to,
            by_k,
            format,
        } => blocks(m_from, m_to, by_k, format, out),
        Command::Enumerate {
            n,
            reducible,
            format,
            out: path,
        } => enumerate(n, reducible, format, path, out, err),
        Command::Verify { n_max } => verify(n_max, &oracle::PrintedFormulas, out, err),
    };
    match result {
        Ok(code) => code,
        // A closed downstream pipe (`| head`) is not an error.
        Err(f) if f.broken_pipe => exit::OK,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn count(reducible: u8, n: usize, form: Option<Form>, out: &mut dyn Write) -> Result<u8, Failure> {
    let value = match (reducible, form) {
        (2, form) => two_reducible_lattices(n, form.unwrap_or(Form::BlockFirst).into()),
        (_, None) => three_reducible_lattices(n),
        (_, Some(_)) => return Err(Failure::usage("--form only applies to --reducible 2")),
    };
    writeln!(out, "{value}").map_err(Failure::io)?;
    Ok(exit::OK)
}

fn check_range(from: usize, to: usize) -> Result<(), Failure> {
    if from > to {
        return Err(Failure::usage(format!("empty range {from}..={to}")));
    }
    Ok(())
}

/// Writes rows of named exact counts as CSV or a JSON array of objects.
fn write_rows(
    columns: &[&str],
    rows: &[Vec<String>],
    format: TableFormat,
    out: &mut dyn Write,
) -> Result<(), Failure> {
    match format {
        TableFormat::Csv => {
            writeln!(out, "{}", columns.join(",")).map_err(Failure::io)?;
            for row in rows {
                writeln!(out, "{}", row.join(",")).map_err(Failure::io)?;
            }
        }
        TableFormat::Json => {
            let objects: Vec<serde_json::Value> = rows
                .iter()
                .map(|row| {
                    let map = columns
                        .iter()
                        .zip(row)
                        .map(|(c, v)| {
                            // Exact counts travel as JSON numbers when they fit.
                            let value = v
                                .parse::<u64>()
                                .map(serde_json::Value::from)
                                .unwrap_or_else(|_| serde_json::Value::from(v.clone()));
                            (c.to_string(), value)
                        })
                        .collect();
                    serde_json::Value::Object(map)
                })
                .collect();
            let text = serde_json::to_string(&objects).expect("rows serialize");
            writeln!(out, "{text}").map_err(Failure::io)?;
        }
    }
    Ok(())
}

fn table(
    reducible: u8,
    n_from: usize,
    n_to: usize,
    format: TableFormat,
    out: &mut dyn Write,
) -> Result<u8, Failure> {
    check_range(n_from, n_to)?;
    let (columns, rows): (&[&str], Vec<Vec<String>>) = if reducible == 2 {
        let rows = (n_from..=n_to)
            .map(|n| {
                vec![
                    n.to_string(),
                    two_reducible_lattices(n, TwoReducibleForm::BlockFirst).to_string(),
                ]
            })
            .collect();
        (&["n", "total"], rows)
    } else {
        let rows = (n_from..=n_to)
            .map(|n| {
                let cells: [Count; 5] = [
                    l1_lattices(n),
                    l2_lattices(n),
                    l3_lattices(n),
                    l4_lattices(n),
                    three_reducible_lattices(n),
                ];
                std::iter::once(n.to_string())
                    .chain(cells.iter().map(Count::to_string))
                    .collect()
            })
            .collect();
        (&["n", "l1", "l2", "l3", "l4", "total"], rows)
    };
    write_rows(columns, &rows, format, out)?;
    Ok(exit::OK)
}

fn blocks(
    m_from: usize,
    m_to: usize,
    by_k: bool,
    format: TableFormat,
    out: &mut dyn Write,
) -> Result<u8, Failure> {
    check_range(m_from, m_to)?;
    let mut rows = Vec::new();
    let columns: &[&str] = if by_k {
        for m in m_from..=m_to {
            for k in 0..=m.saturating_sub(4) {
                let b1 = formulas::b1_blocks(m, k);
                rows.push(vec![
                    m.to_string(),
                    k.to_string(),
                    two_reducible_blocks(m, k).to_string(),
                    b1.to_string(),
                    b1.to_string(),
                    formulas::b3_blocks(m, k).to_string(),
                    formulas::b4_blocks(m, k).to_string(),
                ]);
            }
        }
        &["m", "k", "two_reducible", "b1", "b2", "b3", "b4"]
    } else {
        for m in m_from..=m_to {
            let two: Count = (0..=m).map(|k| two_reducible_blocks(m, k)).sum();
            let (b1, b3, b4) = (b1_family(m), b3_family(m), b4_family(m));
            let three = &b1 + &b1 + &b3 + &b4;
            rows.push(vec![
                m.to_string(),
                two.to_string(),
                b1.to_string(),
                b1.to_string(),
                b3.to_string(),
                b4.to_string(),
                three.to_string(),
            ]);
        }
        &["m", "two_reducible", "b1", "b2", "b3", "b4", "three_reducible"]
    };
    write_rows(columns, &rows, format, out)?;
    Ok(exit::OK)
}

fn enumerate(
    n: usize,
    reducible: u8,
    format: EnumFormat,
    path: Option<PathBuf>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<u8, Failure> {
    let certs = oracle::enumerate_by_reducible(n, usize::from(reducible))?;
    let mut file;
    let sink: &mut dyn Write = match &path {
        Some(p) => {
            file = BufWriter::new(File::create(p).map_err(Failure::io)?);
            &mut file
        }
        None => out,
    };
    write_lattices(&certs.into_iter().collect::<Vec<_>>(), format, sink, err)?;
    sink.flush().map_err(Failure::io)?;
    Ok(exit::OK)
}

fn write_lattices(
    certs: &[Certificate],
    format: EnumFormat,
    sink: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<(), Failure> {
    for (i, cert) in certs.iter().enumerate() {
        let l = Lattice::new(cert.to_digraph()).expect("certificates decode to lattices");
        let text = match format {
            EnumFormat::Json => LatticeDocument::from_lattice(&l).to_json(),
            EnumFormat::Dot => to_dot(&l, &format!("L{i}")),
            EnumFormat::Edges => {
                let sep = if i + 1 < certs.len() { "\n" } else { "" };
                format!("{}{sep}", to_edges(&l))
            }
        };
        match format {
            EnumFormat::Dot => write!(sink, "{text}"),
            _ => writeln!(sink, "{text}"),
        }
        .map_err(Failure::io)?;
    }
    writeln!(err, "{} lattices", certs.len()).map_err(Failure::io)?;
    Ok(())
}

/// Runs the verification against `formulas`, writing the JSON report to
/// `out` and a summary to `err`.
pub fn verify(
    n_max: usize,
    formulas: &dyn FormulaSource,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<u8, Failure> {
    let reports = oracle::verify_with(n_max, formulas)?;
    summarize(&reports, err).map_err(Failure::io)?;
    let json = serde_json::to_string(&reports).expect("reports serialize");
    writeln!(out, "{json}").map_err(Failure::io)?;
    let ok = reports.iter().all(CensusReport::all_agree);
    Ok(if ok { exit::OK } else { exit::MISMATCH })
}

fn summarize(reports: &[CensusReport], err: &mut dyn Write) -> io::Result<()> {
    for r in reports {
        let bad: Vec<_> = r.mismatches().collect();
        let status = if bad.is_empty() { "OK" } else { "MISMATCH" };
        writeln!(err, "n={:>2}  {} cells  {status}", r.n, r.cells.len())?;
        for cell in bad {
            let kind = serde_json::to_string(&cell.kind).expect("cell kinds serialize");
            writeln!(err, "    {kind}: formula {}, oracle {}", cell.formula, cell.oracle)?;
            if let Some(w) = &cell.witness {
                writeln!(err, "    witness {} covers {:?}", w.certificate, w.covers)?;
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn document_round_trip_is_byte_identical() {
        let l = lattice_census::named::f1();
        let doc = LatticeDocument::from_lattice(&l);
        let json = doc.to_json();
        assert_eq!(
            json,
            r#"{"n":6,"covers":[[0,1],[0,4],[1,2],[1,3],[2,5],[3,5],[4,5]],"red":[0,1,5],"nullity":2,"fbb":"F1"}"#
        );
        let back = LatticeDocument::from_json(&json).unwrap().to_lattice().unwrap();
        assert_eq!(LatticeDocument::from_lattice(&back).to_json(), json);
    }

    #[test]
    fn chains_have_no_class() {
        let doc = LatticeDocument::from_lattice(&Lattice::chain(3));
        assert!(doc.to_json().ends_with(r#""fbb":null}"#));
    }

    #[test]
    fn dot_ranks_by_height() {
        let dot = to_dot(&lattice_census::named::m2(), "M2");
        assert!(dot.contains("rankdir=BT;"));
        assert!(dot.contains("{ rank=same; 1; 2; }"));
        assert!(dot.contains("  0 -> 1;"));
    }

    #[test]
    fn bad_documents_are_rejected() {
        let bad = LatticeDocument {
            n: 3,
            covers: vec![(0, 1), (0, 2)],
            red: vec![],
            nullity: 0,
            fbb: None,
        };
        assert!(matches!(bad.to_lattice(), Err(DocumentError::Lattice(_))));
        assert!(matches!(
            LatticeDocument::from_json("{"),
            Err(DocumentError::Json(_))
        ));
    }
}
