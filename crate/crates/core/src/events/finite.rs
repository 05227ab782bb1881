//! Explicit finite spaces. Subsets are `u64` bitmasks over the universe.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use super::EventError;

pub const MAX_UNIVERSE: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteSpace {
    labels: Vec<String>,
    positions: BTreeMap<String, usize>,
}

impl FiniteSpace {
    pub fn new<I, S>(labels: I) -> Result<Arc<Self>, EventError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(EventError::EmptyUniverse);
        }
        if labels.len() > MAX_UNIVERSE {
            return Err(EventError::UniverseTooLarge(labels.len()));
        }
        let mut positions = BTreeMap::new();
        for (i, l) in labels.iter().enumerate() {
            if positions.insert(l.clone(), i).is_some() {
                return Err(EventError::DuplicateLabel(l.clone()));
            }
        }
        Ok(Arc::new(FiniteSpace { labels, positions }))
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn position(&self, label: &str) -> Option<usize> {
        self.positions.get(label).copied()
    }

    /// Mask of the whole universe.
    pub fn full_mask(&self) -> u64 {
        if self.labels.len() == 64 {
            u64::MAX
        } else {
            (1u64 << self.labels.len()) - 1
        }
    }

    pub fn mask_of<'a, I>(&self, labels: I) -> Result<u64, EventError>
    where
        I: IntoIterator<Item = &'a str>,
    {
        labels.into_iter().try_fold(0u64, |m, l| {
            self.position(l)
                .map(|i| m | (1 << i))
                .ok_or_else(|| EventError::UnknownLabel(l.to_string()))
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteEvent {
    space: Arc<FiniteSpace>,
    members: u64,
}

impl FiniteEvent {
    pub fn empty(space: &Arc<FiniteSpace>) -> Self {
        FiniteEvent {
            space: Arc::clone(space),
            members: 0,
        }
    }

    pub fn full(space: &Arc<FiniteSpace>) -> Self {
        FiniteEvent {
            space: Arc::clone(space),
            members: space.full_mask(),
        }
    }

    pub fn from_mask(space: &Arc<FiniteSpace>, members: u64) -> Result<Self, EventError> {
        if members & !space.full_mask() != 0 {
            return Err(EventError::MaskOutsideUniverse(members));
        }
        Ok(FiniteEvent {
            space: Arc::clone(space),
            members,
        })
    }

    pub fn from_labels<'a, I>(space: &Arc<FiniteSpace>, labels: I) -> Result<Self, EventError>
    where
        I: IntoIterator<Item = &'a str>,
    {
        Ok(FiniteEvent {
            space: Arc::clone(space),
            members: space.mask_of(labels)?,
        })
    }

    pub fn space(&self) -> &Arc<FiniteSpace> {
        &self.space
    }

    pub fn mask(&self) -> u64 {
        self.members
    }

    pub fn len(&self) -> usize {
        self.members.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.members == 0
    }

    pub fn labels(&self) -> impl Iterator<Item = &str> {
        self.space
            .labels
            .iter()
            .enumerate()
            .filter(|(i, _)| self.members >> i & 1 == 1)
            .map(|(_, l)| l.as_str())
    }

    pub fn contains(&self, label: &str) -> bool {
        self.space
            .position(label)
            .is_some_and(|i| self.members >> i & 1 == 1)
    }

    fn check_space(&self, other: &FiniteEvent) -> Result<(), EventError> {
        if Arc::ptr_eq(&self.space, &other.space) || self.space == other.space {
            Ok(())
        } else {
            Err(EventError::ForeignSpace)
        }
    }

    fn with_mask(&self, members: u64) -> FiniteEvent {
        FiniteEvent {
            space: Arc::clone(&self.space),
            members,
        }
    }

    pub fn union(&self, other: &FiniteEvent) -> Result<FiniteEvent, EventError> {
        self.check_space(other)?;
        Ok(self.with_mask(self.members | other.members))
    }

    pub fn intersect(&self, other: &FiniteEvent) -> Result<FiniteEvent, EventError> {
        self.check_space(other)?;
        Ok(self.with_mask(self.members & other.members))
    }

    pub fn difference(&self, other: &FiniteEvent) -> Result<FiniteEvent, EventError> {
        self.check_space(other)?;
        Ok(self.with_mask(self.members & !other.members))
    }

    pub fn complement(&self) -> FiniteEvent {
        self.with_mask(!self.members & self.space.full_mask())
    }

    pub fn is_subset(&self, other: &FiniteEvent) -> Result<bool, EventError> {
        self.check_space(other)?;
        Ok(self.members & !other.members == 0)
    }
}

impl fmt::Display for FiniteEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, l) in self.labels().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_set_algebra() {
        let s = FiniteSpace::new(["a", "b", "c", "d"]).unwrap();
        let ab = FiniteEvent::from_labels(&s, ["a", "b"]).unwrap();
        let bc = FiniteEvent::from_labels(&s, ["b", "c"]).unwrap();
        assert_eq!(ab.union(&bc).unwrap().len(), 3);
        assert_eq!(ab.intersect(&bc).unwrap().labels().collect::<Vec<_>>(), vec!["b"]);
        assert_eq!(ab.complement().to_string(), "{c, d}");
        assert!(ab.contains("a") && !ab.contains("c"));
        assert!(ab.intersect(&bc).unwrap().is_subset(&ab).unwrap());
    }

    #[test]
    fn construction_errors() {
        assert_eq!(FiniteSpace::new(Vec::<String>::new()), Err(EventError::EmptyUniverse));
        assert_eq!(
            FiniteSpace::new(["a", "a"]),
            Err(EventError::DuplicateLabel("a".into()))
        );
        let s = FiniteSpace::new(["a"]).unwrap();
        assert_eq!(
            FiniteEvent::from_labels(&s, ["z"]),
            Err(EventError::UnknownLabel("z".into()))
        );
        assert!(FiniteEvent::from_mask(&s, 0b10).is_err());
    }

    #[test]
    fn spaces_do_not_mix() {
        let s = FiniteSpace::new(["a", "b"]).unwrap();
        let t = FiniteSpace::new(["x", "y"]).unwrap();
        let e = FiniteEvent::full(&s);
        let f = FiniteEvent::full(&t);
        assert_eq!(e.union(&f), Err(EventError::ForeignSpace));
    }
}
