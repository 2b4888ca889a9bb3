use crate::error::{Error, Result};

/// Per-frame cluster labels in `[0, k)` over a registered node set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelSequence {
    n: usize,
    k: usize,
    frames: Vec<Vec<usize>>,
}

impl LabelSequence {
    pub fn new(k: usize, frames: Vec<Vec<usize>>) -> Result<Self> {
        let n = frames.first().map(Vec::len).ok_or_else(|| {
            Error::InvalidParameter("label sequence needs at least one frame".into())
        })?;
        for (t, f) in frames.iter().enumerate() {
            if f.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    actual: f.len(),
                });
            }
            if let Some(&bad) = f.iter().find(|&&l| l >= k) {
                return Err(Error::InvalidParameter(format!(
                    "frame {t} uses label {bad} but k = {k}"
                )));
            }
        }
        Ok(Self { n, k, frames })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn t_len(&self) -> usize {
        self.frames.len()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn frame(&self, t: usize) -> &[usize] {
        &self.frames[t]
    }

    pub fn frames(&self) -> &[Vec<usize>] {
        &self.frames
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validates_shape_and_range() {
        assert!(LabelSequence::new(2, vec![]).is_err());
        assert!(LabelSequence::new(2, vec![vec![0, 1], vec![0]]).is_err());
        assert!(LabelSequence::new(2, vec![vec![0, 2]]).is_err());
        let s = LabelSequence::new(3, vec![vec![0, 2], vec![1, 1]]).unwrap();
        assert_eq!((s.n(), s.t_len(), s.k()), (2, 2, 3));
    }
}
