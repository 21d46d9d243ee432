//! Published extremal polymatroids on two to five elements, ranks listed in
//! display order (cardinality, then alphabetical).

use crate::setfun::RankFunction;

#[derive(Clone, Copy, Debug)]
pub struct Entry {
    pub name: &'static str,
    pub ranks: &'static [i64],
}

impl Entry {
    pub fn rank_function(&self) -> RankFunction {
        RankFunction::from_display_ints(self.ranks).expect("catalog rows have 2^n - 1 entries")
    }
}

/// All three extremal polymatroids on `{a, b}`.
pub const TWO_ELEMENTS: &[Entry] = &[
    Entry { name: "M_a", ranks: &[1, 0, 1] },
    Entry { name: "M_b", ranks: &[0, 1, 1] },
    Entry { name: "M_ab", ranks: &[1, 1, 1] },
];

/// One extremal polymatroid from each isomorphism class on `{a, b, c}`.
pub const THREE_ELEMENT_CLASSES: &[Entry] = &[
    Entry { name: "M_a", ranks: &[1, 0, 0, 1, 1, 0, 1] },
    Entry { name: "M_ab", ranks: &[1, 1, 0, 1, 1, 1, 1] },
    Entry { name: "M_abc", ranks: &[1, 1, 1, 1, 1, 1, 1] },
    Entry { name: "M_*", ranks: &[1, 1, 1, 2, 2, 2, 2] },
];

/// One extremal polymatroid from each isomorphism class on `{a, b, c, d}`.
pub const FOUR_ELEMENT_CLASSES: &[Entry] = &[
    Entry { name: "M_1", ranks: &[0, 0, 0, 1, 0, 0, 1, 0, 1, 1, 0, 1, 1, 1, 1] },
    Entry { name: "M_2", ranks: &[0, 0, 1, 1, 0, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1] },
    Entry { name: "M_3", ranks: &[0, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1] },
    Entry { name: "M_4", ranks: &[0, 1, 1, 1, 1, 1, 1, 2, 2, 2, 2, 2, 2, 2, 2] },
    Entry { name: "M_5", ranks: &[1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1] },
    Entry { name: "M_6", ranks: &[1, 1, 1, 1, 1, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2] },
    Entry { name: "M_7", ranks: &[1, 1, 1, 1, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2] },
    Entry { name: "M_8", ranks: &[1, 1, 1, 1, 2, 2, 2, 2, 2, 2, 3, 3, 3, 3, 3] },
    Entry { name: "M_9", ranks: &[1, 1, 1, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2] },
    Entry { name: "M_10", ranks: &[1, 1, 1, 2, 2, 2, 3, 2, 3, 3, 3, 3, 3, 3, 3] },
    Entry { name: "M_11", ranks: &[2, 2, 2, 2, 3, 3, 3, 3, 3, 4, 4, 4, 4, 4, 4] },
];

/// Representatives of the classes on five elements left after removing those
/// with an intersecting non-modular flat pair or a disjoint flat pair
/// generating a non-principal cut.
pub const FIVE_ELEMENT_SURVIVORS: &[Entry] = &[
    Entry {
        name: "S_1",
        ranks: &[0, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 1, 0, 1, 1, 0, 0, 1, 0, 1, 1, 0, 1, 1, 1, 0, 1, 1, 1, 1, 1],
    },
    Entry {
        name: "S_2",
        ranks: &[0, 0, 0, 1, 1, 0, 0, 1, 1, 0, 1, 1, 1, 1, 1, 0, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1],
    },
    Entry {
        name: "S_3",
        ranks: &[0, 0, 1, 1, 1, 0, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1],
    },
    Entry {
        name: "S_4",
        ranks: &[0, 0, 1, 1, 1, 0, 1, 1, 1, 1, 1, 1, 2, 2, 2, 1, 1, 1, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2],
    },
    Entry {
        name: "S_5",
        ranks: &[0, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1],
    },
    Entry {
        name: "S_6",
        ranks: &[0, 1, 1, 1, 1, 1, 1, 1, 1, 1, 2, 2, 2, 2, 2, 1, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2],
    },
    Entry {
        name: "S_7",
        ranks: &[0, 1, 1, 1, 1, 1, 1, 1, 1, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2],
    },
    Entry {
        name: "S_8",
        ranks: &[0, 1, 1, 1, 2, 1, 1, 1, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2],
    },
    Entry {
        name: "S_9",
        ranks: &[1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1],
    },
    Entry {
        name: "S_10",
        ranks: &[1, 1, 1, 1, 1, 1, 1, 2, 2, 1, 2, 2, 2, 2, 2, 1, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2],
    },
    Entry {
        name: "S_11",
        ranks: &[1, 1, 1, 1, 1, 1, 2, 2, 2, 2, 2, 2, 1, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2],
    },
    Entry {
        name: "S_12",
        ranks: &[1, 1, 1, 1, 1, 1, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2],
    },
    Entry {
        name: "S_13",
        ranks: &[1, 1, 1, 1, 1, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2],
    },
    Entry {
        name: "S_14",
        ranks: &[1, 1, 1, 1, 2, 1, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2],
    },
    Entry {
        name: "S_15",
        ranks: &[1, 1, 1, 1, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2],
    },
    Entry {
        name: "S_16",
        ranks: &[1, 1, 1, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2],
    },
    Entry {
        name: "S_17",
        ranks: &[1, 1, 1, 2, 2, 2, 2, 2, 2, 2, 3, 3, 3, 3, 3, 2, 3, 3, 3, 3, 3, 3, 3, 3, 3, 3, 3, 3, 3, 3, 3],
    },
];

/// Expected `(rays, classes)` of the polymatroid cone for `n = 1..=5`.
pub fn expected_counts(n: usize) -> Option<(usize, usize)> {
    match n {
        2 => Some((3, 2)),
        3 => Some((8, 4)),
        4 => Some((41, 11)),
        5 => Some((117_983, 1320)),
        _ => None,
    }
}

/// The published class representatives for `n`, if any.
pub fn class_table(n: usize) -> Option<&'static [Entry]> {
    match n {
        3 => Some(THREE_ELEMENT_CLASSES),
        4 => Some(FOUR_ELEMENT_CLASSES),
        _ => None,
    }
}
