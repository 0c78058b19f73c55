use serde::{Deserialize, Serialize};

use crate::error::{ChordError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Pearl {
    Black,
    White,
}

/// Parses a strand such as `"BWWB"` (case-insensitive).
pub fn parse_pearls(s: &str) -> Result<Vec<Pearl>> {
    s.chars()
        .map(|c| match c.to_ascii_uppercase() {
            'B' => Ok(Pearl::Black),
            'W' => Ok(Pearl::White),
            other => Err(ChordError::Parse(format!("unknown pearl colour {other:?}"))),
        })
        .collect()
}

/// A balanced window of `2N` consecutive pearls, numbered from 1, and the
/// cuts that isolate it. A cut `c` falls between pearls `c` and `c + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NecklaceSplit {
    pub window: [usize; 2],
    pub cuts: Vec<usize>,
}

/// Number of black pearls in each window of length `len` (one entry per
/// start position).
pub fn window_black_counts(pearls: &[Pearl], len: usize) -> Vec<usize> {
    pearls
        .windows(len)
        .map(|w| w.iter().filter(|&&p| p == Pearl::Black).count())
        .collect()
}

/// Splits an open strand of `2N` black and `2N` white pearls with at most two
/// cuts so that one window of `2N` pearls holds exactly `N` of each colour.
/// The window with the smallest start is returned.
pub fn necklace_split(pearls: &[Pearl]) -> Result<NecklaceSplit> {
    let total = pearls.len();
    let blacks = pearls.iter().filter(|&&p| p == Pearl::Black).count();
    if total == 0 || total % 4 != 0 || 2 * blacks != total {
        return Err(ChordError::precondition(
            "need 2N black and 2N white pearls with N >= 1",
        ));
    }
    let n = total / 4;
    let start = window_black_counts(pearls, 2 * n)
        .iter()
        .position(|&c| c == n)
        .ok_or_else(|| ChordError::internal("no balanced window"))?
        + 1;
    let end = start + 2 * n - 1;
    let cuts = [start - 1, end]
        .into_iter()
        .filter(|&c| c >= 1 && c < total)
        .collect();
    Ok(NecklaceSplit { window: [start, end], cuts })
}
