//! Finite group and monoid multiplication tables.

use std::collections::HashMap;

use crate::error::{Error, Result};

/// Multiplication table: `table[a][b]` is the index of `a·b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupTable {
    pub names: Vec<String>,
    pub table: Vec<Vec<usize>>,
}

/// Identity and inverses of a validated group table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupData {
    pub identity: usize,
    pub inverse: Vec<usize>,
}

impl GroupTable {
    pub fn new(names: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty table".into()));
        }
        if table.len() != n || table.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidGroup(format!("table must be {n}x{n}")));
        }
        if let Some((a, b)) = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).find(|&(a, b)| table[a][b] >= n) {
            return Err(Error::InvalidGroup(format!("not closed: {}·{} is outside the set", names[a], names[b])));
        }
        Ok(GroupTable { names, table })
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Cyclic group `Z/n` with elements `e, g, g2, …`.
    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGroup("Z0 is not finite".into()));
        }
        let names = (0..n)
            .map(|k| match k {
                0 => "e".to_string(),
                1 => "g".to_string(),
                k => format!("g{k}"),
            })
            .collect();
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        GroupTable::new(names, table)
    }

    /// Group generated by permutations of `0..degree`, composing as
    /// `(στ)(x) = σ(τ(x))`. Elements are listed in the given order and must
    /// already be closed under composition.
    pub fn from_permutations(names: Vec<String>, perms: Vec<Vec<usize>>) -> Result<Self> {
        let index: HashMap<&[usize], usize> = perms.iter().enumerate().map(|(i, p)| (p.as_slice(), i)).collect();
        let mut table = vec![vec![0; perms.len()]; perms.len()];
        for (a, s) in perms.iter().enumerate() {
            for (b, t) in perms.iter().enumerate() {
                let st: Vec<usize> = t.iter().map(|&x| s[x]).collect();
                table[a][b] = *index
                    .get(st.as_slice())
                    .ok_or_else(|| Error::InvalidGroup(format!("{}·{} is not in the list", names[a], names[b])))?;
            }
        }
        GroupTable::new(names, table)
    }

    /// Symmetric group on three letters, written in cycle notation.
    pub fn symmetric3() -> Self {
        let names = ["e", "(12)", "(13)", "(23)", "(123)", "(132)"];
        let perms = vec![vec![0, 1, 2], vec![1, 0, 2], vec![2, 1, 0], vec![0, 2, 1], vec![1, 2, 0], vec![2, 0, 1]];
        Self::from_permutations(names.iter().map(|s| s.to_string()).collect(), perms).expect("S3 is closed")
    }

    /// Dihedral group of order 8, acting on the vertices of a square.
    pub fn dihedral4() -> Self {
        let rot = |k: usize| (0..4).map(|i| (i + k) % 4).collect::<Vec<_>>();
        let refl = |k: usize| (0..4).map(|i| (8 - i + k) % 4).collect::<Vec<_>>();
        let names = ["e", "r", "r2", "r3", "s", "sr", "sr2", "sr3"];
        let perms = (0..4).map(rot).chain((0..4).map(|k| refl(4 - k))).collect();
        Self::from_permutations(names.iter().map(|s| s.to_string()).collect(), perms).expect("D4 is closed")
    }

    fn check_associative(&self) -> Result<()> {
        let n = self.order();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                        return Err(Error::InvalidGroup(format!(
                            "not associative at ({}, {}, {})",
                            self.names[a], self.names[b], self.names[c]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    fn find_identity(&self) -> Result<usize> {
        let n = self.order();
        (0..n)
            .find(|&e| (0..n).all(|a| self.mul(e, a) == a && self.mul(a, e) == a))
            .ok_or_else(|| Error::InvalidGroup("no identity element".into()))
    }

    /// Checks the monoid axioms and returns the identity.
    pub fn validate_monoid(&self) -> Result<usize> {
        self.check_associative()?;
        self.find_identity()
    }

    /// Checks the group axioms and returns identity and inverses.
    pub fn validate_group(&self) -> Result<GroupData> {
        let identity = self.validate_monoid()?;
        let n = self.order();
        let inverse = (0..n)
            .map(|a| {
                (0..n)
                    .find(|&b| self.mul(a, b) == identity && self.mul(b, a) == identity)
                    .ok_or_else(|| Error::InvalidGroup(format!("{} has no inverse", self.names[a])))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(GroupData { identity, inverse })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_groups_validate() {
        for (g, n) in [(GroupTable::cyclic(5).unwrap(), 5), (GroupTable::symmetric3(), 6), (GroupTable::dihedral4(), 8)]
        {
            assert_eq!(g.order(), n);
            let data = g.validate_group().unwrap();
            assert_eq!(g.names[data.identity], "e");
        }
    }

    #[test]
    fn s3_conjugation() {
        let g = GroupTable::symmetric3();
        let d = g.validate_group().unwrap();
        let (a, b) = (g.index_of("(13)").unwrap(), g.index_of("(12)").unwrap());
        let conj = g.mul(g.mul(a, b), d.inverse[a]);
        assert_eq!(g.names[conj], "(23)");
    }

    #[test]
    fn d4_is_nonabelian_with_involutive_reflections() {
        let g = GroupTable::dihedral4();
        let (r, s) = (g.index_of("r").unwrap(), g.index_of("s").unwrap());
        assert_ne!(g.mul(r, s), g.mul(s, r));
        assert_eq!(g.mul(s, s), 0);
        assert_eq!(g.names[g.mul(s, r)], "sr");
    }

    #[test]
    fn monoid_is_not_a_group() {
        let m = GroupTable::new(vec!["1".into(), "e".into()], vec![vec![0, 1], vec![1, 1]]).unwrap();
        assert_eq!(m.validate_monoid().unwrap(), 0);
        let err = m.validate_group().unwrap_err();
        assert_eq!(err, Error::InvalidGroup("e has no inverse".into()));
    }

    #[test]
    fn non_associative_table_is_named() {
        // a·a = b, a·b = a, b·a = b, b·b = a has no associativity
        let t = GroupTable::new(vec!["a".into(), "b".into()], vec![vec![1, 0], vec![1, 0]]).unwrap();
        assert!(matches!(t.validate_group(), Err(Error::InvalidGroup(m)) if m.starts_with("not associative")));
        let open = GroupTable::new(vec!["a".into()], vec![vec![3]]);
        assert!(matches!(open, Err(Error::InvalidGroup(m)) if m.starts_with("not closed")));
    }
}
