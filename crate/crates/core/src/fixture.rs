//! Externally supplied groups given by generators, with invariants that are
//! recomputed on load.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::Group;
use crate::iso::abelianization;
use crate::perm::Perm;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expected {
    pub order: usize,
    pub exponent: u64,
    pub center_order: usize,
    pub derived_order: usize,
    pub abelianization: Vec<u64>,
    pub involution_count: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FixtureFile {
    pub name: String,
    pub degree: usize,
    pub generators: Vec<Vec<usize>>,
    pub expected: Expected,
}

#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: String,
    pub group: Group,
}

pub fn invariants(g: &Group) -> Expected {
    let derived = g.derived_subgroup();
    let mut ab = abelianization(g, &derived);
    ab.sort_unstable_by(|a, b| b.cmp(a));
    Expected {
        order: g.order(),
        exponent: g.exponent(),
        center_order: g.center().order(),
        derived_order: derived.order(),
        abelianization: ab,
        involution_count: g.involution_count(),
    }
}

pub fn from_file(f: FixtureFile) -> Result<Fixture> {
    let gens = f
        .generators
        .into_iter()
        .map(|images| {
            if images.len() != f.degree {
                return Err(Error::Fixture(format!(
                    "{}: generator of degree {} in a fixture of degree {}",
                    f.name,
                    images.len(),
                    f.degree
                )));
            }
            Perm::from_images(images)
        })
        .collect::<Result<Vec<_>>>()?;
    if gens.is_empty() {
        return Err(Error::Fixture(format!("{}: no generators", f.name)));
    }
    let group = Group::new(gens)?.named(format!("fixture({})", f.name));
    let mut expected = f.expected;
    expected.abelianization.sort_unstable_by(|a, b| b.cmp(a));
    let got = invariants(&group);
    if got != expected {
        return Err(Error::Fixture(format!(
            "{}: recomputed invariants {got:?} differ from the recorded {expected:?}",
            f.name
        )));
    }
    Ok(Fixture { name: f.name, group })
}

pub fn load(path: &Path) -> Result<Fixture> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Fixture(format!("{}: {e}", path.display())))?;
    from_file(serde_json::from_str(&text)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factory;

    fn file_for(g: &Group, name: &str) -> FixtureFile {
        FixtureFile {
            name: name.into(),
            degree: g.degree(),
            generators: g.generators().iter().map(|p| p.images().collect()).collect(),
            expected: invariants(g),
        }
    }

    #[test]
    fn round_trip_and_rejection() {
        let g = factory::wreath_c4_c2().unwrap();
        let f = file_for(&g, "wr");
        assert_eq!(f.expected.order, 32);
        assert_eq!(f.expected.abelianization, vec![4, 2]);
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("wr.json");
        std::fs::write(&path, serde_json::to_string(&f).unwrap()).unwrap();
        assert_eq!(load(&path).unwrap().group.order(), 32);

        let mut bad = file_for(&g, "bad");
        bad.expected.involution_count += 1;
        assert!(matches!(from_file(bad), Err(Error::Fixture(_))));
        assert!(load(&dir.path().join("missing.json")).is_err());
    }
}
