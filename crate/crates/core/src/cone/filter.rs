use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::IsoClass;
use crate::cuts::{generate_cut_with, Modularity};
use crate::extend::{check_star, is_linear, LinearityReport, StarReport};
use crate::flats::{flats, nonmodular_pairs_in};
use crate::setfun::RankFunction;
use crate::subset::SubsetId;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EliminationRule {
    /// Two flats with nonempty intersection form a non-modular pair.
    IntersectingNonModular,
    /// Two disjoint flats generate a cut without the empty set.
    NonPrincipalDisjointCut,
}

impl EliminationRule {
    pub fn label(self) -> &'static str {
        match self {
            EliminationRule::IntersectingNonModular => "a",
            EliminationRule::NonPrincipalDisjointCut => "b",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Elimination {
    pub rule: EliminationRule,
    pub first: SubsetId,
    pub second: SubsetId,
    pub defect: String,
    /// The generated cut for rule (b).
    pub cut: Option<Vec<SubsetId>>,
}

impl Elimination {
    /// Recomputes the witness from scratch against `rank`.
    pub fn revalidate(&self, rank: &RankFunction) -> Result<(), String> {
        let fs = flats(rank);
        if !fs.contains(self.first) || !fs.contains(self.second) {
            return Err("witness sets are not both flats".into());
        }
        let d = rank.modular_defect(self.first, self.second);
        if d.to_string() != self.defect || d <= num_traits::Zero::zero() {
            return Err(format!("defect is {d}, witness says {}", self.defect));
        }
        let meet = self.first.intersection(self.second);
        match self.rule {
            EliminationRule::IntersectingNonModular if meet.is_empty() => Err("flats are disjoint".into()),
            EliminationRule::IntersectingNonModular => Ok(()),
            EliminationRule::NonPrincipalDisjointCut => {
                if !meet.is_empty() {
                    return Err("flats intersect".into());
                }
                let cut =
                    crate::cuts::generate_modular_cut(rank, &[self.first, self.second]).map_err(|e| e.to_string())?;
                if Some(cut.sorted()) != self.cut {
                    return Err("recorded cut differs from the generated one".into());
                }
                if cut.is_principal() {
                    return Err("generated cut is principal".into());
                }
                Ok(())
            }
        }
    }
}

/// The first applicable elimination, trying rule (a) before rule (b).
pub fn find_elimination(rank: &RankFunction) -> Option<Elimination> {
    let fs = flats(rank);
    if let Some((first, second, d)) = nonmodular_pairs_in(rank, &fs, true).into_iter().next() {
        return Some(Elimination {
            rule: EliminationRule::IntersectingNonModular,
            first,
            second,
            defect: d.to_string(),
            cut: None,
        });
    }
    let modularity = Modularity::new(rank);
    for (first, second, d) in nonmodular_pairs_in(rank, &fs, false) {
        if !first.intersection(second).is_empty() {
            continue;
        }
        let cut = generate_cut_with(&modularity, &fs, &[first, second]).expect("flats are valid seeds");
        if !cut.contains(SubsetId::EMPTY) {
            return Some(Elimination {
                rule: EliminationRule::NonPrincipalDisjointCut,
                first,
                second,
                defect: d.to_string(),
                cut: Some(cut.sorted()),
            });
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FilterOutcome {
    pub survivors: Vec<IsoClass>,
    pub eliminated: Vec<(IsoClass, Elimination)>,
}

/// Splits classes into those some elimination rule removes and the rest.
/// Both lists keep the input order.
pub fn lemma_filter(classes: &[IsoClass]) -> FilterOutcome {
    let verdicts: Vec<Option<Elimination>> =
        classes.par_iter().map(|c| find_elimination(&c.representative.to_rank_function())).collect();
    let mut survivors = Vec::new();
    let mut eliminated = Vec::new();
    for (class, verdict) in classes.iter().zip(verdicts) {
        match verdict {
            Some(e) => eliminated.push((class.clone(), e)),
            None => survivors.push(class.clone()),
        }
    }
    FilterOutcome { survivors, eliminated }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurvivorVerdict {
    pub vector: Vec<i64>,
    pub linearity: LinearityReport,
    pub star: StarReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurvivorReport {
    pub survivors: Vec<SurvivorVerdict>,
    /// Star verdicts of the eliminated classes, in elimination order.
    pub eliminated_star: Vec<StarReport>,
    pub all_survivors_linear: bool,
    pub any_star_violated: bool,
}

/// Runs the linearity test on every survivor and the star check on every
/// class.
pub fn verify_survivors(outcome: &FilterOutcome) -> SurvivorReport {
    let survivors: Vec<SurvivorVerdict> = outcome
        .survivors
        .par_iter()
        .map(|c| {
            let f = c.representative.to_rank_function();
            SurvivorVerdict {
                vector: c.representative.display_vector(),
                linearity: is_linear(&f),
                star: check_star(&f),
            }
        })
        .collect();
    let eliminated_star: Vec<StarReport> =
        outcome.eliminated.par_iter().map(|(c, _)| check_star(&c.representative.to_rank_function())).collect();
    let all_survivors_linear = survivors.iter().all(|s| s.linearity.linear);
    let any_star_violated =
        survivors.iter().any(|s| s.star.is_violated()) || eliminated_star.iter().any(StarReport::is_violated);
    SurvivorReport { survivors, eliminated_star, all_survivors_linear, any_star_violated }
}
