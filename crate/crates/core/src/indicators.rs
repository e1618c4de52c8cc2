//! Indicator vectors of a designated block in the layouts of the expected
//! tables, and a per-block summary for reports.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::blocks::{defect_group, defect_pair};
use crate::error::{Error, Result};
use crate::iso::iso_type_2group;
use crate::subsections::Analysis;

/// How the indicators of a block are split into the two halves of a row.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Layout {
    /// Height-0 indicators; the common indicator of the height-1 2-conjugate
    /// family of size `2^(d-3)`.
    Dihedral,
    /// Height-0 indicators; all others.
    Height,
    /// Indicators of the 2-rational characters; all others.
    TwoRational,
    /// Number of real characters of height 0.
    RealHeightZero,
}

/// Two multisets of indicators; compared after sorting.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Vector {
    pub first: Vec<i8>,
    pub second: Vec<i8>,
}

impl Vector {
    pub fn new(mut first: Vec<i8>, mut second: Vec<i8>) -> Vector {
        first.sort_unstable_by(|a, b| b.cmp(a));
        second.sort_unstable_by(|a, b| b.cmp(a));
        Vector { first, second }
    }
}

fn write_runs(f: &mut fmt::Formatter<'_>, v: &[i8]) -> fmt::Result {
    let mut i = 0;
    let mut first = true;
    while i < v.len() {
        let j = (i..v.len()).find(|&j| v[j] != v[i]).unwrap_or(v.len());
        let n = j - i;
        let item = |x: i8| if x < 0 { format!("({x})") } else { x.to_string() };
        if !first {
            write!(f, ",")?;
        }
        first = false;
        if n >= 3 {
            write!(f, "{}^{n}", item(v[i]))?;
        } else {
            let parts: Vec<String> = v[i..j].iter().map(|x| x.to_string()).collect();
            write!(f, "{}", parts.join(","))?;
        }
        i = j;
    }
    Ok(())
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_runs(f, &self.first)?;
        if !self.second.is_empty() {
            write!(f, ";")?;
            write_runs(f, &self.second)?;
        }
        Ok(())
    }
}

fn parse_list(s: &str) -> Result<Vec<i8>> {
    let mut out = Vec::new();
    for item in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let (v, n) = match item.split_once('^') {
            Some((v, n)) => (v, n.trim().parse::<usize>().map_err(|_| bad(item))?),
            None => (item, 1),
        };
        let v = v.trim().trim_start_matches('(').trim_end_matches(')');
        let v: i8 = v.parse().map_err(|_| bad(item))?;
        out.extend(std::iter::repeat_n(v, n));
    }
    Ok(out)
}

fn bad(item: &str) -> Error {
    Error::Unsupported(format!("malformed indicator entry '{item}'"))
}

/// Parses `"1,1,0,0;1,1,0^10"`; without `;` the first four entries form the
/// first half.
pub fn parse_vector(s: &str) -> Result<Vector> {
    match s.split_once(';') {
        Some((a, b)) => Ok(Vector::new(parse_list(a)?, parse_list(b)?)),
        None => {
            let all = parse_list(s)?;
            let k = all.len().min(4);
            Ok(Vector::new(all[..k].to_vec(), all[k..].to_vec()))
        }
    }
}

/// Indicators of block `bi` in `layout`, with structural problems listed.
pub fn extract(an: &Analysis, bi: usize, layout: Layout) -> Result<(Vector, Vec<String>)> {
    let b = &an.blocks[bi];
    let t = &an.table;
    let mut issues = Vec::new();
    let eps = |c: usize| t.eps[c];
    let by_height = |want: bool| -> Vec<usize> {
        b.chars
            .iter()
            .zip(&b.heights)
            .filter(|(_, &h)| (h == 0) == want)
            .map(|(&c, _)| c)
            .collect()
    };
    let h0 = by_height(true);
    let v = match layout {
        Layout::Height => Vector::new(h0.iter().map(|&c| eps(c)).collect(), by_height(false).iter().map(|&c| eps(c)).collect()),
        Layout::TwoRational => {
            let (rat, rest): (Vec<usize>, Vec<usize>) = b.chars.iter().partition(|&&c| t.is_two_rational(c));
            Vector::new(rat.iter().map(|&c| eps(c)).collect(), rest.iter().map(|&c| eps(c)).collect())
        }
        Layout::RealHeightZero => {
            let n = h0.iter().filter(|&&c| t.is_real(c)).count();
            Vector::new(vec![n as i8], Vec::new())
        }
        Layout::Dihedral => {
            if h0.len() != 4 {
                issues.push(format!("{} characters of height 0, expected 4", h0.len()));
            }
            let h1: Vec<usize> = b
                .chars
                .iter()
                .zip(&b.heights)
                .filter(|(_, &h)| h == 1)
                .map(|(&c, _)| c)
                .collect();
            if h1.len() + h0.len() != b.k() {
                issues.push("characters of height above 1".into());
            }
            let size = 1usize << b.defect.saturating_sub(3);
            let families: Vec<Vec<usize>> = t
                .two_conjugate_families()
                .into_iter()
                .filter(|f| f.iter().all(|c| h1.contains(c)))
                .collect();
            let of_size: Vec<&Vec<usize>> = families.iter().filter(|f| f.len() == size).collect();
            let mu = match of_size.as_slice() {
                [f] => {
                    let mu = eps(f[0]);
                    if f.iter().any(|&c| eps(c) != mu) {
                        issues.push("indicator not constant on the height-1 family".into());
                    }
                    for &c in h1.iter().filter(|c| !f.contains(c)) {
                        if eps(c) != 1 {
                            issues.push(format!("height-1 character {c} outside the family has indicator {}", eps(c)));
                        }
                    }
                    vec![mu]
                }
                other => {
                    issues.push(format!("{} height-1 2-conjugate families of size {size}, expected 1", other.len()));
                    Vec::new()
                }
            };
            Vector::new(h0.iter().map(|&c| eps(c)).collect(), mu)
        }
    };
    Ok((v, issues))
}

#[derive(Clone, Debug, Serialize)]
pub struct BlockSummary {
    pub index: usize,
    pub chars: Vec<usize>,
    pub degrees: Vec<u64>,
    pub heights: Vec<u32>,
    pub eps: Vec<i8>,
    pub k: usize,
    pub l: usize,
    pub defect: u32,
    pub principal: bool,
    pub real: bool,
    pub two_rational: usize,
    pub d_type: String,
    pub e_type: Option<String>,
}

fn type_label(g: &crate::group::Group) -> String {
    match iso_type_2group(g) {
        Ok(t) => t.label,
        Err(_) => format!("order {}", g.order()),
    }
}

pub fn summarize(an: &Analysis, bi: usize) -> Result<BlockSummary> {
    let b = &an.blocks[bi];
    let t = &an.table;
    let d = defect_group(&an.g, t, b)?;
    let e_type = if b.real {
        Some(type_label(&defect_pair(&an.g, t, b)?.e))
    } else {
        None
    };
    Ok(BlockSummary {
        index: bi,
        chars: b.chars.clone(),
        degrees: b.chars.iter().map(|&c| t.degree(c)).collect(),
        heights: b.heights.clone(),
        eps: b.chars.iter().map(|&c| t.eps[c]).collect(),
        k: b.k(),
        l: b.l,
        defect: b.defect,
        principal: b.principal,
        real: b.real,
        two_rational: b.chars.iter().filter(|&&c| t.is_two_rational(c)).count(),
        d_type: type_label(&d),
        e_type,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factory;

    #[test]
    fn parse_and_print() {
        let v = parse_vector("1, 1, 1, 1; 1, 1, 1, 1, (-1)^8").unwrap();
        assert_eq!(v.first, vec![1; 4]);
        assert_eq!(v.second.len(), 12);
        assert_eq!(v.to_string(), "1^4;1^4,(-1)^8");
        assert_eq!(parse_vector(&v.to_string()).unwrap(), v);
        let all = parse_vector("1^16").unwrap();
        assert_eq!((all.first.len(), all.second.len()), (4, 12));
        assert_eq!(parse_vector("0,0,1,1;-1").unwrap(), parse_vector("1,1,0,0;-1").unwrap());
        assert!(parse_vector("1,a").is_err());
    }

    #[test]
    fn psl27_principal() {
        let an = Analysis::new(factory::linear(factory::LinearKind::Psl, 7).unwrap()).unwrap();
        let (v, issues) = extract(&an, 0, Layout::Dihedral).unwrap();
        assert!(issues.is_empty(), "{issues:?}");
        assert_eq!(v, parse_vector("0,0,1,1;1").unwrap());
        let s = summarize(&an, 0).unwrap();
        assert_eq!((s.d_type.as_str(), s.e_type.as_deref()), ("D8", Some("D8")));
    }
}
