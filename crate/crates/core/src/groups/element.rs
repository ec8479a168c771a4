use std::cmp::Ordering;
use std::fmt;

use serde::ser::{Serialize, Serializer};
use serde_json::Value;

use crate::error::{Error, Result};

/// A reduced word in a free group. Letter `+i` is the generator `a_i`
/// (1-based), `-i` its inverse.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct FreeWord(Vec<i32>);

impl FreeWord {
    pub fn identity() -> Self {
        FreeWord(Vec::new())
    }

    /// Freely reduces `letters`.
    pub fn new(letters: impl IntoIterator<Item = i32>) -> Self {
        let mut out: Vec<i32> = Vec::new();
        for l in letters {
            assert!(l != 0, "free group letters are nonzero");
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        FreeWord(out)
    }

    pub fn letters(&self) -> &[i32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Self {
        FreeWord(self.0.iter().rev().map(|l| -l).collect())
    }

    pub fn concat(&self, other: &FreeWord) -> Self {
        FreeWord::new(self.0.iter().chain(other.0.iter()).copied())
    }

    /// Parses `a`..`z` as generators and `A`..`Z` as their inverses.
    pub fn parse(s: &str) -> Result<Self> {
        s.chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| match c {
                'a'..='z' => Ok(c as i32 - 'a' as i32 + 1),
                'A'..='Z' => Ok(-(c as i32 - 'A' as i32 + 1)),
                _ => Err(Error::Parse(format!("bad free group letter {c:?}"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(FreeWord::new)
    }

    fn letter_key(l: i32) -> (i32, bool) {
        (l.abs(), l < 0)
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &l in &self.0 {
            let c = if l > 0 {
                (b'a' + (l - 1) as u8) as char
            } else {
                (b'A' + (-l - 1) as u8) as char
            };
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Shortlex with letters ordered `a < A < b < B < ...`.
impl Ord for FreeWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| {
            let a = self.0.iter().map(|&l| Self::letter_key(l));
            let b = other.0.iter().map(|&l| Self::letter_key(l));
            a.cmp(b)
        })
    }
}

impl PartialOrd for FreeWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupElement {
    Zd(Vec<i64>),
    Free(FreeWord),
    /// `(a, b, c)` is the matrix `[[1, a, c], [0, 1, b], [0, 0, 1]]`.
    Heisenberg([i64; 3]),
    Finite(usize),
}

impl Serialize for GroupElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            GroupElement::Zd(v) => v.serialize(s),
            GroupElement::Free(w) => s.serialize_str(&w.to_string()),
            GroupElement::Heisenberg(t) => t.serialize(s),
            GroupElement::Finite(i) => s.serialize_u64(*i as u64),
        }
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupElement::Zd(v) => {
                let parts: Vec<String> = v.iter().map(i64::to_string).collect();
                write!(f, "({})", parts.join(","))
            }
            GroupElement::Free(w) if w.is_empty() => write!(f, "e"),
            GroupElement::Free(w) => write!(f, "{w}"),
            GroupElement::Heisenberg([a, b, c]) => write!(f, "({a},{b},{c})"),
            GroupElement::Finite(i) => write!(f, "#{i}"),
        }
    }
}

/// A finite group given by its multiplication table.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
}

impl FiniteGroup {
    /// Validates closure, identity, inverses and associativity.
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0
            || table
                .iter()
                .any(|row| row.len() != n || row.iter().any(|&x| x >= n))
        {
            return Err(Error::InvalidParameter(
                "multiplication table must be n x n over 0..n".into(),
            ));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or_else(|| Error::InvalidParameter("table has no identity".into()))?;
        let inverses = (0..n)
            .map(|x| {
                (0..n)
                    .find(|&y| table[x][y] == identity && table[y][x] == identity)
                    .ok_or_else(|| Error::InvalidParameter(format!("element {x} has no inverse")))
            })
            .collect::<Result<Vec<_>>>()?;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::InvalidParameter(format!(
                            "table is not associative at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        Ok(FiniteGroup {
            table,
            identity,
            inverses,
        })
    }

    /// `Z / n` with elements `0..n` and addition mod `n`.
    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("cyclic group of order 0".into()));
        }
        Self::from_table(
            (0..n)
                .map(|a| (0..n).map(|b| (a + b) % n).collect())
                .collect(),
        )
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }
}

/// A group family with its parameters.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Group {
    Zd { dim: usize },
    Free { rank: usize },
    Heisenberg,
    Finite(FiniteGroup),
}

impl Group {
    pub fn name(&self) -> String {
        match self {
            Group::Zd { dim } => format!("Z^{dim}"),
            Group::Free { rank } => format!("F_{rank}"),
            Group::Heisenberg => "H3(Z)".into(),
            Group::Finite(g) => format!("finite group of order {}", g.order()),
        }
    }

    pub fn is_infinite(&self) -> bool {
        match self {
            Group::Zd { dim } => *dim > 0,
            Group::Free { rank } => *rank > 0,
            Group::Heisenberg => true,
            Group::Finite(_) => false,
        }
    }

    pub fn identity(&self) -> GroupElement {
        match self {
            Group::Zd { dim } => GroupElement::Zd(vec![0; *dim]),
            Group::Free { .. } => GroupElement::Free(FreeWord::identity()),
            Group::Heisenberg => GroupElement::Heisenberg([0, 0, 0]),
            Group::Finite(g) => GroupElement::Finite(g.identity),
        }
    }

    /// Checks that `g` belongs to this family with matching parameters.
    pub fn check(&self, g: &GroupElement) -> Result<()> {
        let ok = match (self, g) {
            (Group::Zd { dim }, GroupElement::Zd(v)) => v.len() == *dim,
            (Group::Free { rank }, GroupElement::Free(w)) => w
                .letters()
                .iter()
                .all(|l| l.unsigned_abs() as usize <= *rank),
            (Group::Heisenberg, GroupElement::Heisenberg(_)) => true,
            (Group::Finite(f), GroupElement::Finite(i)) => *i < f.order(),
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::FamilyMismatch(format!(
                "{g} is not an element of {}",
                self.name()
            )))
        }
    }

    pub fn multiply(&self, g: &GroupElement, h: &GroupElement) -> Result<GroupElement> {
        self.check(g)?;
        self.check(h)?;
        Ok(self.multiply_unchecked(g, h))
    }

    pub(crate) fn multiply_unchecked(&self, g: &GroupElement, h: &GroupElement) -> GroupElement {
        match (self, g, h) {
            (_, GroupElement::Zd(a), GroupElement::Zd(b)) => {
                GroupElement::Zd(a.iter().zip(b).map(|(x, y)| x + y).collect())
            }
            (_, GroupElement::Free(a), GroupElement::Free(b)) => GroupElement::Free(a.concat(b)),
            (_, GroupElement::Heisenberg([a, b, c]), GroupElement::Heisenberg([x, y, z])) => {
                GroupElement::Heisenberg([a + x, b + y, c + z + a * y])
            }
            (Group::Finite(f), GroupElement::Finite(a), GroupElement::Finite(b)) => {
                GroupElement::Finite(f.table[*a][*b])
            }
            _ => unreachable!("operands checked against the family"),
        }
    }

    pub fn inverse(&self, g: &GroupElement) -> Result<GroupElement> {
        self.check(g)?;
        Ok(self.inverse_unchecked(g))
    }

    pub(crate) fn inverse_unchecked(&self, g: &GroupElement) -> GroupElement {
        match (self, g) {
            (_, GroupElement::Zd(v)) => GroupElement::Zd(v.iter().map(|x| -x).collect()),
            (_, GroupElement::Free(w)) => GroupElement::Free(w.inverse()),
            (_, GroupElement::Heisenberg([a, b, c])) => {
                GroupElement::Heisenberg([-a, -b, a * b - c])
            }
            (Group::Finite(f), GroupElement::Finite(i)) => GroupElement::Finite(f.inverses[*i]),
            _ => unreachable!("operand checked against the family"),
        }
    }

    pub fn power(&self, g: &GroupElement, n: i64) -> Result<GroupElement> {
        self.check(g)?;
        let base = if n < 0 {
            self.inverse_unchecked(g)
        } else {
            g.clone()
        };
        let mut acc = self.identity();
        for _ in 0..n.unsigned_abs() {
            acc = self.multiply_unchecked(&acc, &base);
        }
        Ok(acc)
    }

    /// The standard symmetric generating set: unit vectors for `Z^d`, the
    /// free basis for `F_k`, `x = (1,0,0)` and `y = (0,1,0)` for Heisenberg,
    /// and every non-identity element for a finite group.
    pub fn standard_generators(&self) -> GeneratingSet {
        let base: Vec<GroupElement> = match self {
            Group::Zd { dim } => (0..*dim)
                .map(|i| {
                    let mut v = vec![0; *dim];
                    v[i] = 1;
                    GroupElement::Zd(v)
                })
                .collect(),
            Group::Free { rank } => (1..=*rank as i32)
                .map(|i| GroupElement::Free(FreeWord::new([i])))
                .collect(),
            Group::Heisenberg => {
                vec![
                    GroupElement::Heisenberg([1, 0, 0]),
                    GroupElement::Heisenberg([0, 1, 0]),
                ]
            }
            Group::Finite(f) => (0..f.order())
                .filter(|&i| i != f.identity)
                .map(GroupElement::Finite)
                .collect(),
        };
        GeneratingSet::new(self, base).expect("standard generators are valid")
    }

    /// Parses an element from its JSON serialization for this family.
    pub fn parse_element(&self, v: &Value) -> Result<GroupElement> {
        let ints = |v: &Value| -> Result<Vec<i64>> {
            v.as_array()
                .ok_or_else(|| Error::Parse(format!("expected an integer array, got {v}")))?
                .iter()
                .map(|x| {
                    x.as_i64()
                        .ok_or_else(|| Error::Parse(format!("{x} is not an integer")))
                })
                .collect()
        };
        let g = match self {
            Group::Zd { .. } => GroupElement::Zd(ints(v)?),
            Group::Free { .. } => {
                GroupElement::Free(FreeWord::parse(v.as_str().ok_or_else(|| {
                    Error::Parse(format!("expected a word string, got {v}"))
                })?)?)
            }
            Group::Heisenberg => {
                let t = ints(v)?;
                let t: [i64; 3] = t
                    .try_into()
                    .map_err(|_| Error::Parse("Heisenberg element needs 3 integers".into()))?;
                GroupElement::Heisenberg(t)
            }
            Group::Finite(_) => GroupElement::Finite(
                v.as_u64()
                    .ok_or_else(|| Error::Parse(format!("expected an index, got {v}")))?
                    as usize,
            ),
        };
        self.check(&g)?;
        Ok(g)
    }
}

/// A finite, inverse-closed generating set without the identity, in
/// canonical (sorted) order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GeneratingSet {
    elements: Vec<GroupElement>,
}

impl GeneratingSet {
    /// Adds missing inverses, drops duplicates and rejects the identity.
    pub fn new(group: &Group, elements: Vec<GroupElement>) -> Result<Self> {
        let id = group.identity();
        let mut all = Vec::with_capacity(2 * elements.len());
        for g in elements {
            group.check(&g)?;
            if g == id {
                return Err(Error::InvalidParameter(
                    "generating set contains the identity".into(),
                ));
            }
            all.push(group.inverse_unchecked(&g));
            all.push(g);
        }
        all.sort();
        all.dedup();
        if all.is_empty() {
            return Err(Error::InvalidParameter("empty generating set".into()));
        }
        Ok(GeneratingSet { elements: all })
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}
