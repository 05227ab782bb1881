//! Events of the coin-toss space `{H,T}^N`.
//!
//! An event is a cylinder base (a set of full assignments to a finite index
//! set) adjusted by finitely many eventually-constant points: `plus` points
//! lie outside the base and are added, `minus` points lie inside the base and
//! are removed.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use super::EventError;

/// Largest index set a coin event may depend on (atoms are `u64` masks).
pub const MAX_INDICES: usize = 64;

/// Refinements and complements that would materialize more atoms than this
/// are refused.
pub const MAX_ATOMS: usize = 1 << 22;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Toss {
    H,
    T,
}

impl Toss {
    pub fn flip(self) -> Toss {
        match self {
            Toss::H => Toss::T,
            Toss::T => Toss::H,
        }
    }

    pub fn from_char(c: char) -> Option<Toss> {
        match c {
            'H' => Some(Toss::H),
            'T' => Some(Toss::T),
            _ => None,
        }
    }

    fn bit(self) -> u64 {
        match self {
            Toss::H => 1,
            Toss::T => 0,
        }
    }

    fn from_bit(bit: u64) -> Toss {
        if bit & 1 == 1 {
            Toss::H
        } else {
            Toss::T
        }
    }
}

impl fmt::Display for Toss {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Toss::H => "H",
            Toss::T => "T",
        })
    }
}

/// An eventually-constant sequence: `prefix` followed by `tail` forever.
/// Canonical: the prefix never ends with the tail symbol.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CoinPoint {
    prefix: Vec<Toss>,
    tail: Toss,
}

impl CoinPoint {
    pub fn new(mut prefix: Vec<Toss>, tail: Toss) -> Self {
        while prefix.last() == Some(&tail) {
            prefix.pop();
        }
        CoinPoint { prefix, tail }
    }

    pub fn constant(tail: Toss) -> Self {
        CoinPoint {
            prefix: Vec::new(),
            tail,
        }
    }

    pub fn prefix(&self) -> &[Toss] {
        &self.prefix
    }

    pub fn tail(&self) -> Toss {
        self.tail
    }

    /// Value at the 1-based `index`.
    pub fn at(&self, index: u32) -> Toss {
        debug_assert!(index >= 1, "coin indices are 1-based");
        self.prefix
            .get(index as usize - 1)
            .copied()
            .unwrap_or(self.tail)
    }

    fn mask(&self, indices: &[u32]) -> u64 {
        indices
            .iter()
            .enumerate()
            .fold(0, |m, (j, &i)| m | (self.at(i).bit() << j))
    }
}

/// `HTH(T)`: prefix then the constant tail in parentheses.
impl fmt::Display for CoinPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for t in &self.prefix {
            write!(f, "{t}")?;
        }
        write!(f, "({})", self.tail)
    }
}

impl FromStr for CoinPoint {
    type Err = EventError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || EventError::MalformedPoint(s.to_string());
        let s = s.trim();
        let (prefix, rest) = s.split_once('(').ok_or_else(bad)?;
        let tail = rest.strip_suffix(')').ok_or_else(bad)?;
        let mut chars = tail.chars();
        let tail = chars.next().and_then(Toss::from_char).ok_or_else(bad)?;
        if chars.next().is_some() {
            return Err(bad());
        }
        let prefix = prefix
            .chars()
            .map(Toss::from_char)
            .collect::<Option<Vec<_>>>()
            .ok_or_else(bad)?;
        Ok(CoinPoint::new(prefix, tail))
    }
}

/// Canonical coin event.
///
/// `indices` is the minimal sorted index set the base depends on; atom bit
/// `j` holds the value at `indices[j]` (set = `H`).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CoinEvent {
    indices: Vec<u32>,
    atoms: Vec<u64>,
    plus: BTreeSet<CoinPoint>,
    minus: BTreeSet<CoinPoint>,
}

impl CoinEvent {
    pub fn empty() -> Self {
        CoinEvent {
            indices: Vec::new(),
            atoms: Vec::new(),
            plus: BTreeSet::new(),
            minus: BTreeSet::new(),
        }
    }

    /// The whole sample space.
    pub fn omega() -> Self {
        CoinEvent {
            atoms: vec![0],
            ..CoinEvent::empty()
        }
    }

    /// Sequences taking value `t` at index `i` for every `(i, t)`.
    pub fn cylinder(constraints: &[(u32, Toss)]) -> Result<Self, EventError> {
        let mut sorted = constraints.to_vec();
        sorted.sort();
        sorted.dedup();
        for pair in sorted.windows(2) {
            if pair[0].0 == pair[1].0 {
                return Err(EventError::ConflictingIndex(pair[0].0));
            }
        }
        if sorted.iter().any(|&(i, _)| i == 0) {
            return Err(EventError::ZeroIndex);
        }
        if sorted.len() > MAX_INDICES {
            return Err(EventError::TooManyIndices(sorted.len()));
        }
        let indices = sorted.iter().map(|&(i, _)| i).collect();
        let atom = sorted
            .iter()
            .enumerate()
            .fold(0, |m, (j, &(_, t))| m | (t.bit() << j));
        Ok(CoinEvent {
            indices,
            atoms: vec![atom],
            ..CoinEvent::empty()
        })
    }

    /// A finite set of points.
    pub fn points<I: IntoIterator<Item = CoinPoint>>(points: I) -> Self {
        CoinEvent {
            plus: points.into_iter().collect(),
            ..CoinEvent::empty()
        }
    }

    /// Validates and canonicalizes a raw description. `atoms` lists full
    /// assignments aligned with `indices`.
    pub fn from_parts(
        indices: Vec<u32>,
        atoms: Vec<Vec<Toss>>,
        plus: Vec<CoinPoint>,
        minus: Vec<CoinPoint>,
    ) -> Result<Self, EventError> {
        if indices.contains(&0) {
            return Err(EventError::ZeroIndex);
        }
        let mut order: Vec<usize> = (0..indices.len()).collect();
        order.sort_by_key(|&j| indices[j]);
        let sorted: Vec<u32> = order.iter().map(|&j| indices[j]).collect();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(EventError::DuplicateIndex(w[0]));
        }
        if sorted.len() > MAX_INDICES {
            return Err(EventError::TooManyIndices(sorted.len()));
        }
        let mut masks = Vec::with_capacity(atoms.len());
        for atom in &atoms {
            if atom.len() != sorted.len() {
                return Err(EventError::AtomArity {
                    expected: sorted.len(),
                    found: atom.len(),
                });
            }
            masks.push(
                order
                    .iter()
                    .enumerate()
                    .fold(0u64, |m, (j, &src)| m | (atom[src].bit() << j)),
            );
        }
        masks.sort_unstable();
        masks.dedup();
        let (indices, atoms) = minimize(sorted, masks);
        let base = CoinEvent {
            indices,
            atoms,
            ..CoinEvent::empty()
        };
        let mut event = base.clone();
        for p in plus {
            if base.base_contains(&p) {
                return Err(EventError::PlusPointInBase(p.to_string()));
            }
            event.plus.insert(p);
        }
        for p in minus {
            if !base.base_contains(&p) {
                return Err(EventError::MinusPointOutsideBase(p.to_string()));
            }
            if event.plus.contains(&p) {
                return Err(EventError::PointInBothAdjustments(p.to_string()));
            }
            event.minus.insert(p);
        }
        Ok(event)
    }

    pub fn indices(&self) -> &[u32] {
        &self.indices
    }

    /// Atom masks, sorted; bit `j` refers to `indices()[j]`.
    pub fn atom_masks(&self) -> &[u64] {
        &self.atoms
    }

    /// Atoms as explicit assignments in index order.
    pub fn atoms(&self) -> impl Iterator<Item = Vec<(u32, Toss)>> + '_ {
        self.atoms.iter().map(move |&m| {
            self.indices
                .iter()
                .enumerate()
                .map(|(j, &i)| (i, Toss::from_bit(m >> j)))
                .collect()
        })
    }

    pub fn atom_count(&self) -> usize {
        self.atoms.len()
    }

    pub fn codimension(&self) -> usize {
        self.indices.len()
    }

    pub fn plus(&self) -> &BTreeSet<CoinPoint> {
        &self.plus
    }

    pub fn minus(&self) -> &BTreeSet<CoinPoint> {
        &self.minus
    }

    /// Largest index the base depends on (0 when it depends on none).
    pub fn max_index(&self) -> u32 {
        self.indices.last().copied().unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty() && self.plus.is_empty()
    }

    /// `true` when no points are added or removed.
    pub fn is_pure_cylinder_set(&self) -> bool {
        self.plus.is_empty() && self.minus.is_empty()
    }

    /// `true` when the event is a finite set of points.
    pub fn is_finite(&self) -> bool {
        self.atoms.is_empty()
    }

    /// Membership in the cylinder base alone.
    pub fn base_contains(&self, p: &CoinPoint) -> bool {
        self.atoms.binary_search(&p.mask(&self.indices)).is_ok()
    }

    /// Base membership for a sampled sequence given by its values at the
    /// base indices.
    pub fn base_contains_assignment<F: Fn(u32) -> Toss>(&self, value_at: F) -> bool {
        let mask = self
            .indices
            .iter()
            .enumerate()
            .fold(0u64, |m, (j, &i)| m | (value_at(i).bit() << j));
        self.atoms.binary_search(&mask).is_ok()
    }

    pub fn contains(&self, p: &CoinPoint) -> bool {
        if self.plus.contains(p) {
            return true;
        }
        self.base_contains(p) && !self.minus.contains(p)
    }

    /// Base atoms refined to the superset `target` of the event's indices.
    pub fn refine_atoms(&self, target: &[u32]) -> Result<Vec<u64>, EventError> {
        if target.len() > MAX_INDICES {
            return Err(EventError::TooManyIndices(target.len()));
        }
        let positions: Vec<usize> = self
            .indices
            .iter()
            .map(|i| {
                target
                    .binary_search(i)
                    .expect("refinement target must contain the event's indices")
            })
            .collect();
        let free: Vec<usize> = (0..target.len())
            .filter(|p| !positions.contains(p))
            .collect();
        let combos = 1usize
            .checked_shl(free.len() as u32)
            .filter(|&c| c <= MAX_ATOMS)
            .ok_or(EventError::TooManyAtoms)?;
        if self.atoms.len().saturating_mul(combos) > MAX_ATOMS {
            return Err(EventError::TooManyAtoms);
        }
        let mut out = Vec::with_capacity(self.atoms.len() * combos);
        for &atom in &self.atoms {
            let base = positions
                .iter()
                .enumerate()
                .fold(0u64, |m, (j, &p)| m | (((atom >> j) & 1) << p));
            for c in 0..combos {
                let extra = free
                    .iter()
                    .enumerate()
                    .fold(0u64, |m, (k, &p)| m | ((((c as u64) >> k) & 1) << p));
                out.push(base | extra);
            }
        }
        out.sort_unstable();
        Ok(out)
    }

    fn combine<F>(&self, other: &CoinEvent, op: F) -> Result<CoinEvent, EventError>
    where
        F: Fn(bool, bool) -> bool,
    {
        debug_assert!(!op(false, false));
        let indices: Vec<u32> = self
            .indices
            .iter()
            .chain(&other.indices)
            .copied()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let left = self.refine_atoms(&indices)?;
        let right = other.refine_atoms(&indices)?;
        let atoms = merge_sorted(&left, &right, &op);
        let (indices, atoms) = minimize(indices, atoms);
        let base = CoinEvent {
            indices,
            atoms,
            ..CoinEvent::empty()
        };
        Ok(self.adjust(other, base, op))
    }

    /// Attaches the exceptional points to `base` so the result is the
    /// pointwise `op` of the two operands.
    fn adjust<F>(&self, other: &CoinEvent, mut base: CoinEvent, op: F) -> CoinEvent
    where
        F: Fn(bool, bool) -> bool,
    {
        let candidates: BTreeSet<&CoinPoint> = self
            .plus
            .iter()
            .chain(&self.minus)
            .chain(&other.plus)
            .chain(&other.minus)
            .collect();
        for p in candidates {
            let inside = op(self.contains(p), other.contains(p));
            let in_base = base.base_contains(p);
            if inside && !in_base {
                base.plus.insert(p.clone());
            } else if !inside && in_base {
                base.minus.insert(p.clone());
            }
        }
        base
    }

    pub fn union(&self, other: &CoinEvent) -> Result<CoinEvent, EventError> {
        self.combine(other, |a, b| a || b)
    }

    pub fn intersect(&self, other: &CoinEvent) -> Result<CoinEvent, EventError> {
        self.combine(other, |a, b| a && b)
    }

    pub fn difference(&self, other: &CoinEvent) -> Result<CoinEvent, EventError> {
        self.combine(other, |a, b| a && !b)
    }

    pub fn complement(&self) -> Result<CoinEvent, EventError> {
        let total = 1usize
            .checked_shl(self.indices.len() as u32)
            .filter(|&t| t <= MAX_ATOMS)
            .ok_or(EventError::TooManyAtoms)?;
        let present: HashSet<u64> = self.atoms.iter().copied().collect();
        let atoms: Vec<u64> = (0..total as u64).filter(|m| !present.contains(m)).collect();
        let indices = if atoms.is_empty() {
            Vec::new()
        } else {
            self.indices.clone()
        };
        Ok(CoinEvent {
            indices,
            atoms,
            plus: self.minus.clone(),
            minus: self.plus.clone(),
        })
    }

    pub fn is_subset(&self, other: &CoinEvent) -> Result<bool, EventError> {
        Ok(self.difference(other)?.is_empty())
    }

    /// Checks every canonical-form invariant. Used by tests and validators.
    pub fn validate(&self) -> Result<(), String> {
        if self.indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err("indices not strictly increasing".into());
        }
        if self.indices.first() == Some(&0) {
            return Err("zero index".into());
        }
        if self.atoms.windows(2).any(|w| w[0] >= w[1]) {
            return Err("atoms not strictly increasing".into());
        }
        let width = self.indices.len();
        if width < 64 && self.atoms.iter().any(|&a| a >> width != 0) {
            return Err("atom mask wider than index set".into());
        }
        if self.atoms.is_empty() && !self.indices.is_empty() {
            return Err("empty base with nonempty index set".into());
        }
        let (mi, ma) = minimize(self.indices.clone(), self.atoms.clone());
        if mi != self.indices || ma != self.atoms {
            return Err("index set is not minimal".into());
        }
        for p in &self.plus {
            if p.prefix.last() == Some(&p.tail) {
                return Err(format!("non-canonical point {p}"));
            }
            if self.base_contains(p) {
                return Err(format!("plus point {p} lies in the base"));
            }
        }
        for p in &self.minus {
            if !self.base_contains(p) {
                return Err(format!("minus point {p} lies outside the base"));
            }
        }
        Ok(())
    }
}

fn merge_sorted<F: Fn(bool, bool) -> bool>(left: &[u64], right: &[u64], op: F) -> Vec<u64> {
    let mut out = Vec::with_capacity(left.len().max(right.len()));
    let (mut i, mut j) = (0, 0);
    while i < left.len() || j < right.len() {
        let (value, a, b) = match (left.get(i), right.get(j)) {
            (Some(&x), Some(&y)) if x == y => {
                i += 1;
                j += 1;
                (x, true, true)
            }
            (Some(&x), Some(&y)) if x < y => {
                i += 1;
                (x, true, false)
            }
            (Some(&x), None) => {
                i += 1;
                (x, true, false)
            }
            (_, Some(&y)) => {
                j += 1;
                (y, false, true)
            }
            (None, None) => unreachable!(),
        };
        if op(a, b) {
            out.push(value);
        }
    }
    out
}

/// Drops every index the atom set does not depend on. Relevance of an index
/// is a property of the point set, so one pass over the original suffices.
fn minimize(indices: Vec<u32>, atoms: Vec<u64>) -> (Vec<u32>, Vec<u64>) {
    if atoms.is_empty() {
        return (Vec::new(), Vec::new());
    }
    let present: HashSet<u64> = atoms.iter().copied().collect();
    let relevant: Vec<usize> = (0..indices.len())
        .filter(|&j| atoms.iter().any(|a| !present.contains(&(a ^ (1 << j)))))
        .collect();
    if relevant.len() == indices.len() {
        return (indices, atoms);
    }
    let mut projected: Vec<u64> = atoms
        .iter()
        .map(|a| {
            relevant
                .iter()
                .enumerate()
                .fold(0u64, |m, (k, &j)| m | (((a >> j) & 1) << k))
        })
        .collect();
    projected.sort_unstable();
    projected.dedup();
    (relevant.iter().map(|&j| indices[j]).collect(), projected)
}
