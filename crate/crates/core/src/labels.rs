use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Sorted set of class names; a class is referred to by its position here.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelSet {
    names: Vec<String>,
}

impl LabelSet {
    pub fn new<I, S>(labels: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut names: Vec<String> = labels.into_iter().map(Into::into).collect();
        names.sort();
        names.dedup();
        LabelSet { names }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, class: usize) -> &str {
        &self.names[class]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.names.binary_search_by(|n| n.as_str().cmp(label)).ok()
    }

    /// Maps names to class indices; every unknown name is listed in the error.
    pub fn encode(&self, labels: &[String]) -> Result<Vec<usize>> {
        let mut unknown: Vec<String> = Vec::new();
        let encoded: Vec<usize> = labels
            .iter()
            .map(|l| match self.index_of(l) {
                Some(i) => i,
                None => {
                    if !unknown.contains(l) {
                        unknown.push(l.clone());
                    }
                    usize::MAX
                }
            })
            .collect();
        if unknown.is_empty() {
            Ok(encoded)
        } else {
            Err(Error::UnknownLabel(unknown))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sorted_and_deduplicated() {
        let set = LabelSet::new(["TD", "ASD", "TD"]);
        assert_eq!(set.names(), &["ASD", "TD"]);
        assert_eq!(set.index_of("TD"), Some(1));
        assert_eq!(
            set.encode(&["TD".into(), "ASD".into()]).unwrap(),
            vec![1, 0]
        );
    }

    #[test]
    fn unknown_labels_are_listed() {
        let set = LabelSet::new(["A", "B"]);
        match set.encode(&["A".into(), "Z".into(), "Y".into(), "Z".into()]) {
            Err(Error::UnknownLabel(names)) => assert_eq!(names, vec!["Z", "Y"]),
            other => panic!("unexpected {other:?}"),
        }
    }
}
