//! Line-oriented text format for nearring tables.
//!
//! ```text
//! nearring 1
//! order 3
//! name C3
//! add
//! 0 1 2
//! 1 2 0
//! 2 0 1
//! mul
//! 0 0 0
//! 0 1 2
//! 0 2 1
//! phi 1
//! 0 2 1
//! reps 1
//! zero
//! end
//! ```
//!
//! The `phi`/`reps`/`zero` block is optional and holds generator
//! permutations of `Phi`, the representatives `R` and the subset `M`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ferrero::{construct, FerreroPair, PlanarNearring, RepChoice};
use crate::group::{Automorphism, FiniteGroup};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DocumentProvenance {
    pub phi_generators: Vec<Vec<usize>>,
    pub reps: Vec<usize>,
    pub zero_reps: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NearringDocument {
    pub version: u32,
    pub name: String,
    pub add: Vec<Vec<usize>>,
    pub mul: Vec<Vec<usize>>,
    pub provenance: Option<DocumentProvenance>,
}

fn join(row: &[usize]) -> String {
    row.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

struct Lines<'a> {
    lines: Vec<(usize, &'a str)>,
    pos: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        let lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
            .collect();
        Lines { lines, pos: 0 }
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        let line = self.lines.get(self.pos.saturating_sub(1)).map_or(0, |(n, _)| *n);
        Error::Parse { line, msg: msg.into() }
    }

    fn next(&mut self) -> Result<&'a str> {
        let (_, l) = *self.lines.get(self.pos).ok_or_else(|| Error::Parse { line: 0, msg: "unexpected end of input".into() })?;
        self.pos += 1;
        Ok(l)
    }

    fn peek_keyword(&self) -> Option<&'a str> {
        self.lines.get(self.pos).map(|(_, l)| l.split_whitespace().next().unwrap_or(""))
    }

    /// Next line as `keyword rest`, requiring the keyword.
    fn keyword(&mut self, kw: &str) -> Result<&'a str> {
        let l = self.next()?;
        let (head, rest) = l.split_once(char::is_whitespace).unwrap_or((l, ""));
        if head != kw {
            return Err(self.err(format!("expected '{kw}', found '{head}'")));
        }
        Ok(rest.trim())
    }

    fn numbers(&self, s: &str) -> Result<Vec<usize>> {
        s.split_whitespace()
            .map(|t| t.parse::<usize>().map_err(|_| self.err(format!("'{t}' is not a non-negative integer"))))
            .collect()
    }

    fn number(&self, s: &str) -> Result<usize> {
        match self.numbers(s)?.as_slice() {
            [x] => Ok(*x),
            _ => Err(self.err(format!("expected one number, found '{s}'"))),
        }
    }

    fn table(&mut self, n: usize) -> Result<Vec<Vec<usize>>> {
        (0..n)
            .map(|_| {
                let l = self.next()?;
                let row = self.numbers(l)?;
                if row.len() != n {
                    return Err(self.err(format!("expected {n} entries, found {}", row.len())));
                }
                if let Some(x) = row.iter().find(|&&x| x >= n) {
                    return Err(self.err(format!("entry {x} out of range")));
                }
                Ok(row)
            })
            .collect()
    }
}

impl NearringDocument {
    pub fn from_nearring(nearring: &PlanarNearring) -> Self {
        let provenance = nearring.provenance().map(|p| {
            let phi = p.phi();
            DocumentProvenance {
                phi_generators: phi.generators().into_iter().map(|i| phi.get(i).map().to_vec()).collect(),
                reps: p.choice().reps().to_vec(),
                zero_reps: p.choice().zero_reps().to_vec(),
            }
        });
        NearringDocument {
            version: FORMAT_VERSION,
            name: nearring.name().to_string(),
            add: nearring.group().rows(),
            mul: nearring.mul_rows(),
            provenance,
        }
    }

    pub fn order(&self) -> usize {
        self.add.len()
    }

    pub fn to_text(&self) -> String {
        let mut lines = vec![
            format!("nearring {}", self.version),
            format!("order {}", self.order()),
            format!("name {}", self.name),
            "add".to_string(),
        ];
        lines.extend(self.add.iter().map(|r| join(r)));
        lines.push("mul".into());
        lines.extend(self.mul.iter().map(|r| join(r)));
        if let Some(p) = &self.provenance {
            lines.push(format!("phi {}", p.phi_generators.len()));
            lines.extend(p.phi_generators.iter().map(|g| join(g)));
            lines.push(format!("reps {}", join(&p.reps)).trim_end().to_string());
            lines.push(format!("zero {}", join(&p.zero_reps)).trim_end().to_string());
        }
        lines.push("end".into());
        let mut out = lines.join("\n");
        out.push('\n');
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = Lines::new(text);
        let version = lines.keyword("nearring")?;
        let version = lines.number(version)? as u32;
        if version != FORMAT_VERSION {
            return Err(lines.err(format!("unsupported format version {version}")));
        }
        let n = lines.keyword("order")?;
        let n = lines.number(n)?;
        if n == 0 {
            return Err(lines.err("order must be positive"));
        }
        let name = lines.keyword("name")?.to_string();
        lines.keyword("add")?;
        let add = lines.table(n)?;
        lines.keyword("mul")?;
        let mul = lines.table(n)?;
        let provenance = if lines.peek_keyword() == Some("phi") {
            let k = lines.keyword("phi")?;
            let k = lines.number(k)?;
            let phi_generators = (0..k)
                .map(|_| {
                    let l = lines.next()?;
                    let g = lines.numbers(l)?;
                    if g.len() != n {
                        return Err(lines.err(format!("generator has {} images, expected {n}", g.len())));
                    }
                    Ok(g)
                })
                .collect::<Result<Vec<_>>>()?;
            let reps = lines.keyword("reps")?;
            let reps = lines.numbers(reps)?;
            let zero = lines.keyword("zero")?;
            let zero_reps = lines.numbers(zero)?;
            Some(DocumentProvenance { phi_generators, reps, zero_reps })
        } else {
            None
        };
        lines.keyword("end")?;
        if lines.peek_keyword().is_some() {
            lines.pos += 1;
            return Err(lines.err("content after 'end'"));
        }
        Ok(NearringDocument { version, name, add, mul, provenance })
    }

    /// Validates the tables and rebuilds the nearring. Stated Ferrero data
    /// must reproduce the multiplication table exactly.
    pub fn to_nearring(&self) -> Result<PlanarNearring> {
        let group = FiniteGroup::from_table(self.name.clone(), self.add.clone())?;
        match &self.provenance {
            None => PlanarNearring::from_tables(group, self.mul.clone()),
            Some(p) => {
                let gens: Vec<Automorphism> = p.phi_generators.iter().cloned().map(Automorphism::new).collect();
                let pair = FerreroPair::from_generators(group, &gens)?;
                let nr = construct(&pair, &RepChoice::new(p.reps.clone(), p.zero_reps.clone()))?;
                if nr.mul_rows() != self.mul {
                    return Err(Error::InvalidNearring(
                        "multiplication table disagrees with the stated Ferrero data".into(),
                    ));
                }
                Ok(nr)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples::{order_fifteen_example, z9_example};
    use crate::nearfield::{make_dickson_nearfield_9, make_field};

    #[test]
    fn module_doc_example_parses() {
        let text = "nearring 1\norder 3\nname C3\nadd\n0 1 2\n1 2 0\n2 0 1\nmul\n0 0 0\n0 1 2\n0 2 1\nphi 1\n0 2 1\nreps 1\nzero\nend\n";
        let doc = NearringDocument::parse(text).unwrap();
        assert_eq!(doc.to_text(), text);
        let n = doc.to_nearring().unwrap();
        assert_eq!(n.mul_rows(), make_field(3).unwrap().mul_rows());
    }

    #[test]
    fn round_trips() {
        for n in [z9_example(), order_fifteen_example(), PlanarNearring::from_nearfield(&make_dickson_nearfield_9())] {
            let doc = NearringDocument::from_nearring(&n);
            let text = doc.to_text();
            let back = NearringDocument::parse(&text).unwrap();
            assert_eq!(back, doc);
            assert_eq!(back.to_text(), text);
            let rebuilt = back.to_nearring().unwrap();
            assert_eq!(rebuilt.mul_rows(), n.mul_rows());
        }
    }

    #[test]
    fn tables_only_recover_provenance() {
        let mut doc = NearringDocument::from_nearring(&z9_example());
        doc.provenance = None;
        let n = NearringDocument::parse(&doc.to_text()).unwrap().to_nearring().unwrap();
        assert!(n.provenance().is_some());
    }

    #[test]
    fn parse_errors_carry_lines() {
        let e = NearringDocument::parse("nearring 1\norder 2\nname x\nadd\n0 1\n1\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 6, .. }), "{e:?}");
        assert!(matches!(NearringDocument::parse("nearring 2\n"), Err(Error::Parse { line: 1, .. })));
        assert!(NearringDocument::parse("").is_err());
    }

    #[test]
    fn inconsistent_provenance_is_rejected() {
        let mut doc = NearringDocument::from_nearring(&z9_example());
        doc.provenance.as_mut().unwrap().zero_reps.clear();
        assert!(matches!(doc.to_nearring(), Err(Error::InvalidNearring(_))));
    }
}
