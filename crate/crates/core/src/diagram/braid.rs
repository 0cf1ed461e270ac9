use std::fmt;
use std::str::FromStr;

use super::{Assembler, LinkDiagram};
use crate::error::{Error, Result};

/// A braid word on `strands` strands; letter `k` is the generator between
/// positions `k` and `k+1`, `-k` its inverse.
///
/// Convention: a positive letter closes up to a *negative* crossing
/// (left-handed twist), so the closure of `σ₁³` is the trefoil whose Jones
/// polynomial in this crate's normalization is `t + t^3 - t^4`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i64>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i64>) -> Result<Self> {
        if strands == 0 {
            return Err(Error::InvalidArgument("a braid needs at least one strand".into()));
        }
        for &l in &letters {
            if l == 0 || l.unsigned_abs() as usize >= strands {
                return Err(Error::InvalidArgument(format!(
                    "letter {l} invalid for {strands} strands"
                )));
            }
        }
        Ok(Self { strands, letters })
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i64] {
        &self.letters
    }

    pub fn inverse_letters(&self) -> Self {
        Self { strands: self.strands, letters: self.letters.iter().map(|l| -l).collect() }
    }
}

/// `braid:<strands>:<l1>,<l2>,...`; the `braid:` prefix is optional here.
impl FromStr for BraidWord {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let body = text.trim();
        let body = body.strip_prefix("braid:").unwrap_or(body);
        let (n, word) = body
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("braid {text:?}: expected <strands>:<word>")))?;
        let strands: usize =
            n.trim().parse().map_err(|_| Error::Parse(format!("braid strand count {n:?}")))?;
        let letters = word
            .split(',')
            .map(str::trim)
            .filter(|_| !word.trim().is_empty())
            .map(|w| w.parse::<i64>().map_err(|_| Error::Parse(format!("braid letter {w:?}"))))
            .collect::<Result<Vec<_>>>()?;
        BraidWord::new(strands, letters).map_err(|e| Error::Parse(e.to_string()))
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let word: Vec<String> = self.letters.iter().map(i64::to_string).collect();
        write!(f, "braid:{}:{}", self.strands, word.join(","))
    }
}

/// Emits braid crossings between adjacent positions of parallel upward
/// strands. Position `p` lies to the right of position `p+1`.
pub(crate) struct StrandBundle<K> {
    pub current: Vec<usize>,
    pub labels: Vec<K>,
}

impl<K: Ord + Clone> StrandBundle<K> {
    /// Cross positions `p` and `p+1` with a crossing of the given sign.
    pub fn cross(&mut self, asm: &mut Assembler<K>, p: usize, positive: bool) {
        let se = self.current[p];
        let sw = self.current[p + 1];
        self.labels.swap(p, p + 1);
        let ne = asm.edge(self.labels[p].clone());
        let nw = asm.edge(self.labels[p + 1].clone());
        if positive {
            // Under strand SE -> NW, over SW -> NE.
            asm.crossing([se, ne, nw, sw], true);
        } else {
            // Under strand SW -> NE, over SE -> NW.
            asm.crossing([sw, se, ne, nw], false);
        }
        self.current[p] = ne;
        self.current[p + 1] = nw;
    }
}

pub fn braid_closure(w: &BraidWord) -> LinkDiagram {
    let mut asm = Assembler::new();
    let top: Vec<usize> = (0..w.strands).map(|p| asm.edge(p)).collect();
    let mut bundle = StrandBundle { current: top.clone(), labels: (0..w.strands).collect() };
    for &l in &w.letters {
        let p = l.unsigned_abs() as usize - 1;
        bundle.cross(&mut asm, p, l < 0);
    }
    for (p, &t) in top.iter().enumerate() {
        asm.merge(bundle.current[p], t);
    }
    asm.finish().expect("braid closures are valid diagrams")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_word_is_unknot() {
        let d = braid_closure(&BraidWord::new(1, vec![]).unwrap());
        assert_eq!(d, LinkDiagram::unknot());
    }

    #[test]
    fn trefoil_and_hopf() {
        let t = braid_closure(&"braid:2:1,1,1".parse().unwrap());
        assert_eq!((t.component_count(), t.crossing_count()), (1, 3));
        let h = braid_closure(&"2:1,1".parse().unwrap());
        assert_eq!((h.component_count(), h.crossing_count()), (2, 2));
    }

    #[test]
    fn unused_strands_are_free_circles() {
        let d = braid_closure(&BraidWord::new(3, vec![1, 1, 1]).unwrap());
        assert_eq!(d.component_count(), 2);
        assert_eq!(d.crossingless_components(), 1);
    }

    #[test]
    fn invalid_words() {
        assert!(BraidWord::new(2, vec![2]).is_err());
        assert!(BraidWord::new(2, vec![0]).is_err());
        assert!(BraidWord::new(0, vec![]).is_err());
        assert!("braid:2:1,x".parse::<BraidWord>().is_err());
        assert!("braid:2".parse::<BraidWord>().is_err());
    }

    #[test]
    fn display_round_trip() {
        let w: BraidWord = "braid:3:1,-2,1,-2".parse().unwrap();
        assert_eq!(w.to_string(), "braid:3:1,-2,1,-2");
        assert_eq!(w.to_string().parse::<BraidWord>().unwrap(), w);
        assert_eq!("braid:1:".parse::<BraidWord>().unwrap().letters(), &[] as &[i64]);
    }
}
