//! Sparse SDPA (`.dat-s`) export of the margin problem at a fixed point.
//!
//! The exported problem is
//!
//! ```text
//! maximize t   subject to   A + Σ xᵢBᵢ + Σ zⱼCⱼ − t·I ⪰ 0
//! ```
//!
//! over `y = (z₁, …, zₘ, t)`. In SDPA's primal form
//! `min cᵀy s.t. Σ Fᵢ yᵢ − F₀ ⪰ 0` this is `Fⱼ = Cⱼ`, `F_{m+1} = −I`,
//! `F₀ = −(A + Σ xᵢBᵢ)` and `c = (0, …, 0, −1)`.

use std::fmt::Write as _;

use sdrep_core::{Point, SDRep, SymMat};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum SdpaError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("unexpected end of input: {0}")]
    Truncated(&'static str),
}

/// Formats a value the way it appears in the data file.
pub fn format_value(v: f64) -> String {
    if v.abs() < 1e15 && (v == v.trunc() || v.abs() >= 1e-4) {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}

/// Writes the margin problem of `rep` at `x`.
pub fn export(rep: &SDRep, x: &Point) -> sdrep_core::Result<String> {
    let base = rep.pencil_at(x)?;
    let m = rep.m();
    let blocks = rep.blocks();
    let mut out = String::new();
    let _ = writeln!(out, "{}", m + 1);
    let _ = writeln!(out, "{}", blocks.len());
    let sizes: Vec<String> = blocks.iter().map(|b| b.to_string()).collect();
    let _ = writeln!(out, "{}", sizes.join(" "));
    let objective: Vec<String> = (0..=m)
        .map(|i| {
            if i == m {
                "-1".to_string()
            } else {
                "0".to_string()
            }
        })
        .collect();
    let _ = writeln!(out, "{}", objective.join(" "));

    write_matrix(&mut out, 0, &base.scale(-1.0), blocks);
    for (j, c) in rep.lifted_coeffs().iter().enumerate() {
        write_matrix(&mut out, j + 1, c, blocks);
    }
    write_matrix(
        &mut out,
        m + 1,
        &SymMat::identity(rep.k()).scale(-1.0),
        blocks,
    );
    Ok(out)
}

fn write_matrix(out: &mut String, matno: usize, mat: &SymMat, blocks: &[usize]) {
    let mut offset = 0;
    for (bi, &size) in blocks.iter().enumerate() {
        for i in 0..size {
            for j in i..size {
                let v = mat.get(offset + i, offset + j);
                if v != 0.0 {
                    let _ = writeln!(
                        out,
                        "{matno} {} {} {} {}",
                        bi + 1,
                        i + 1,
                        j + 1,
                        format_value(v)
                    );
                }
            }
        }
        offset += size;
    }
}

/// A parsed sparse SDPA problem.
#[derive(Debug, Clone, PartialEq)]
pub struct SdpaProblem {
    pub num_vars: usize,
    pub block_sizes: Vec<usize>,
    pub objective: Vec<f64>,
    /// `(matno, blkno, i, j, value)` with the file's 1-based indices.
    pub entries: Vec<(usize, usize, usize, usize, f64)>,
}

impl SdpaProblem {
    /// Dense `F_matno` with its blocks laid out along the diagonal.
    pub fn dense_matrix(&self, matno: usize) -> SymMat {
        let total: usize = self.block_sizes.iter().sum();
        let offsets: Vec<usize> = self
            .block_sizes
            .iter()
            .scan(0, |acc, d| {
                let o = *acc;
                *acc += d;
                Some(o)
            })
            .collect();
        let mut vals = vec![0.0; total * total];
        for &(mat, blk, i, j, v) in &self.entries {
            if mat != matno {
                continue;
            }
            let o = offsets[blk - 1];
            vals[(o + i - 1) * total + o + j - 1] = v;
            vals[(o + j - 1) * total + o + i - 1] = v;
        }
        SymMat::from_row_major(total, vals).expect("symmetric by construction")
    }
}

fn tokens(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.trim();
        if l.is_empty() || l.starts_with('"') || l.starts_with('*') {
            None
        } else {
            Some((i + 1, l))
        }
    })
}

fn numbers(line: usize, s: &str) -> Result<Vec<f64>, SdpaError> {
    s.split(|c: char| c.is_whitespace() || c == ',' || c == '{' || c == '}' || c == '(' || c == ')')
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<f64>().map_err(|_| SdpaError::Syntax {
                line,
                message: format!("not a number: {t:?}"),
            })
        })
        .collect()
}

fn first_int(line: usize, s: &str) -> Result<usize, SdpaError> {
    let v = numbers(line, s.split('=').next().unwrap_or(""))?;
    match v.first() {
        Some(&x) if x >= 0.0 && x == x.trunc() => Ok(x as usize),
        _ => Err(SdpaError::Syntax {
            line,
            message: "expected a non-negative integer".into(),
        }),
    }
}

/// Reads a sparse SDPA file (the subset this crate writes plus comments).
pub fn parse(text: &str) -> Result<SdpaProblem, SdpaError> {
    let mut lines = tokens(text);
    let (l, s) = lines.next().ok_or(SdpaError::Truncated("mDIM"))?;
    let num_vars = first_int(l, s)?;
    let (l, s) = lines.next().ok_or(SdpaError::Truncated("nBLOCK"))?;
    let num_blocks = first_int(l, s)?;
    let (l, s) = lines.next().ok_or(SdpaError::Truncated("bLOCKsTRUCT"))?;
    let sizes = numbers(l, s.split('=').next().unwrap_or(""))?;
    if sizes.len() < num_blocks {
        return Err(SdpaError::Syntax {
            line: l,
            message: format!("expected {num_blocks} block sizes"),
        });
    }
    let block_sizes = sizes[..num_blocks]
        .iter()
        .map(|v| v.abs() as usize)
        .collect();
    let (l, s) = lines.next().ok_or(SdpaError::Truncated("objective"))?;
    let objective = numbers(l, s)?;
    if objective.len() != num_vars {
        return Err(SdpaError::Syntax {
            line: l,
            message: format!("expected {num_vars} objective coefficients"),
        });
    }
    let mut entries = Vec::new();
    for (l, s) in lines {
        let v = numbers(l, s)?;
        if v.len() != 5 {
            return Err(SdpaError::Syntax {
                line: l,
                message: "expected \"matno blkno i j value\"".into(),
            });
        }
        let idx = |x: f64| x as usize;
        entries.push((idx(v[0]), idx(v[1]), idx(v[2]), idx(v[3]), v[4]));
    }
    Ok(SdpaProblem {
        num_vars,
        block_sizes,
        objective,
        entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn value_formatting() {
        assert_eq!(format_value(-1.0), "-1");
        assert_eq!(format_value(0.5), "0.5");
        assert_eq!(format_value(1e-7), "1e-7");
        assert_eq!(format_value(2.5e20), "2.5e20");
    }

    #[test]
    fn parses_comments_and_header_annotations() {
        let text = "\"example\"\n2 = mDIM\n1 = nBLOCK\n2 = bLOCKsTRUCT\n{0, -1}\n0 1 1 1 -1\n";
        let p = parse(text).unwrap();
        assert_eq!(p.num_vars, 2);
        assert_eq!(p.block_sizes, vec![2]);
        assert_eq!(p.objective, vec![0.0, -1.0]);
        assert_eq!(p.entries, vec![(0, 1, 1, 1, -1.0)]);
        assert!(matches!(parse("1\n"), Err(SdpaError::Truncated(_))));
        assert!(matches!(
            parse("1\n1\n1\n1\n0 1 1\n"),
            Err(SdpaError::Syntax { line: 5, .. })
        ));
    }
}
