use num_traits::Signed;
use serde::Serialize;

use crate::ratmath::{rational_string, Rational, SpectralVector};

use super::{debug_checks_enabled, PerronContext, PerronError};

/// Set-theoretic relationship between the spectracone `C` and the row cone `RC`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Relation {
    Equal,
    /// `RC ⊊ C`.
    RowconeProperSubset,
    /// `C ⊊ RC`.
    SpectraconeProperSubset,
    IncomparableIntersecting,
    /// Neither contains the other and `C ∩ RC = {0}`.
    IncomparableTrivialIntersection,
}

impl Relation {
    pub fn as_str(self) -> &'static str {
        match self {
            Relation::Equal => "EQUAL",
            Relation::RowconeProperSubset => "ROWCONE_PROPER_SUBSET",
            Relation::SpectraconeProperSubset => "SPECTRACONE_PROPER_SUBSET",
            Relation::IncomparableIntersecting => "INCOMPARABLE_INTERSECTING",
            Relation::IncomparableTrivialIntersection => "INCOMPARABLE_TRIVIAL_INTERSECTION",
        }
    }
}

/// A row of `S` that is a positive multiple of the all-ones vector.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AllOnesRow {
    pub index: usize,
    #[serde(with = "rational_string")]
    pub scale: Rational,
    pub exact: bool,
}

/// Evidence attached to a [`RelationReport`]. Every violation names the
/// inequality it breaks so it can be re-checked independently.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// Row `row` of `S` (a generator of `RC`) has a negative entry
    /// `(entry_row, entry_col)` in `S diag(vector) S^{-1}`.
    RowOutsideSpectracone {
        row: usize,
        vector: SpectralVector,
        entry_row: usize,
        entry_col: usize,
        #[serde(with = "rational_string")]
        value: Rational,
    },
    /// Extremal ray of `C` whose coordinates `vector S^{-1}` in the row basis
    /// have a negative entry at `column`.
    ExtremalOutsideRowCone {
        vector: SpectralVector,
        column: usize,
        #[serde(with = "rational_string")]
        value: Rational,
    },
    /// A nonzero vector in both cones.
    CommonRay { vector: SpectralVector },
}

impl Witness {
    /// Re-evaluates the witness against `ctx`.
    pub fn holds(&self, ctx: &PerronContext) -> bool {
        match self {
            Witness::RowOutsideSpectracone {
                row,
                vector,
                entry_row,
                entry_col,
                value,
            } => {
                *row < ctx.n()
                    && ctx.matrix().row(*row) == *vector
                    && ctx
                        .spectracone_row(*entry_row, *entry_col)
                        .dot(vector)
                        .is_ok_and(|v| v == *value && v.is_negative())
            }
            Witness::ExtremalOutsideRowCone { vector, column, value } => {
                ctx.spectracone().contains(vector).unwrap_or(false)
                    && ctx
                        .inverse()
                        .column(*column)
                        .dot(vector)
                        .is_ok_and(|v| v == *value && v.is_negative())
            }
            Witness::CommonRay { vector } => {
                !vector.is_zero()
                    && ctx.spectracone().contains(vector).unwrap_or(false)
                    && ctx.row_cone().contains(vector).unwrap_or(false)
            }
        }
    }
}

/// Agreement between the algebraic criteria and the geometric verdicts.
/// Criteria that only apply when `S` has an all-ones row are `None` otherwise.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrossChecks {
    /// RHC ⇔ `RC ⊆ C`.
    pub rhc_iff_row_cone_inside: bool,
    /// Extremals `y` of `C` satisfy `y S^{-1} >= 0` ⇔ `C ⊆ RC`.
    pub extremal_test_iff_spectracone_inside: bool,
    /// All-ones row ⇒ `C ⊆ RC`.
    pub all_ones_row_gives_spectracone_inside: Option<bool>,
    /// All-ones row: `C = RC` ⇔ RHC.
    pub all_ones_row_equal_iff_rhc: Option<bool>,
    /// All-ones row: `C = RC` ⇔ every row of `S` is in `C`.
    pub all_ones_row_equal_iff_rows_in_spectracone: Option<bool>,
    /// `C = RC` ⇔ RHC and the extremal test.
    pub equal_iff_rhc_and_extremal_test: bool,
}

impl CrossChecks {
    pub fn all_agree(&self) -> bool {
        self.rhc_iff_row_cone_inside
            && self.extremal_test_iff_spectracone_inside
            && self.all_ones_row_gives_spectracone_inside != Some(false)
            && self.all_ones_row_equal_iff_rhc != Some(false)
            && self.all_ones_row_equal_iff_rows_in_spectracone != Some(false)
            && self.equal_iff_rhc_and_extremal_test
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationReport {
    pub relation: Relation,
    pub dimension: usize,
    pub is_rhc: bool,
    pub is_perron_similarity: bool,
    pub has_all_ones_row: bool,
    pub all_ones_row: Option<AllOnesRow>,
    /// `S` orthogonal: every realization `S diag(x) S^T` is symmetric.
    pub is_orthogonal: bool,
    pub row_cone_in_spectracone: bool,
    pub spectracone_in_row_cone: bool,
    pub spectracone_rays: Vec<SpectralVector>,
    pub row_cone_rays: Vec<SpectralVector>,
    pub witnesses: Vec<Witness>,
    /// Present when debug checks are enabled.
    pub cross_checks: Option<CrossChecks>,
}

impl PerronContext {
    pub fn classify(&self) -> Result<RelationReport, PerronError> {
        let checks = debug_checks_enabled();
        if checks {
            self.validate_row_cone()?;
        }
        let rhc = self.rhc();
        let row_cone_in = rhc.holds;
        let outside = self.extremal_outside_row_cone();
        let spectracone_in = outside.is_none();

        let mut witnesses = Vec::new();
        if let Some(failure) = &rhc.failure {
            // r_i ∘ r_j ∉ RC means S diag(r_i) S^{-1} has a negative entry in row j
            let row = failure.i;
            let vector = self.matrix().row(row);
            let (entry_row, entry_col, value) = self
                .first_negative_entry(&vector)
                .ok_or_else(|| PerronError::Inconsistent(format!("row {row} fails RHC but is in the spectracone")))?;
            witnesses.push(Witness::RowOutsideSpectracone {
                row,
                vector,
                entry_row,
                entry_col,
                value,
            });
        }
        if let Some((vector, column, value)) = outside {
            witnesses.push(Witness::ExtremalOutsideRowCone { vector, column, value });
        }

        let relation = match (row_cone_in, spectracone_in) {
            (true, true) => Relation::Equal,
            (true, false) => Relation::RowconeProperSubset,
            (false, true) => Relation::SpectraconeProperSubset,
            (false, false) => {
                let common = self.spectracone().intersect(self.row_cone())?;
                match common.extremal_rays().rays().first() {
                    None => Relation::IncomparableTrivialIntersection,
                    Some(ray) => {
                        witnesses.push(Witness::CommonRay { vector: ray.clone() });
                        Relation::IncomparableIntersecting
                    }
                }
            }
        };

        let all_ones_row = self.all_ones_row();
        let cross_checks = if checks {
            let c = self.cross_check(row_cone_in, spectracone_in, all_ones_row.is_some())?;
            if !c.all_agree() {
                return Err(PerronError::Inconsistent(format!("criteria disagree: {c:?}")));
            }
            Some(c)
        } else {
            None
        };

        Ok(RelationReport {
            relation,
            dimension: self.n(),
            is_rhc: rhc.holds,
            is_perron_similarity: self.is_perron_similarity(),
            has_all_ones_row: all_ones_row.is_some(),
            all_ones_row,
            is_orthogonal: self.is_orthogonal(),
            row_cone_in_spectracone: row_cone_in,
            spectracone_in_row_cone: spectracone_in,
            spectracone_rays: self.spectracone().extremal_rays().rays().to_vec(),
            row_cone_rays: self.row_cone().extremal_rays().rays().to_vec(),
            witnesses,
            cross_checks,
        })
    }

    /// First negative entry `(i, j, value)` of `S diag(x) S^{-1}`.
    pub(crate) fn first_negative_entry(&self, x: &SpectralVector) -> Option<(usize, usize, Rational)> {
        let n = self.n();
        (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).find_map(|(i, j)| {
            let v = self.spectracone_row(i, j).dot(x).ok()?;
            v.is_negative().then_some((i, j, v))
        })
    }

    fn cross_check(&self, rhc: bool, extremal_test: bool, all_ones: bool) -> Result<CrossChecks, PerronError> {
        let c = self.spectracone();
        let rc = self.row_cone();
        let rc_in_c = rc.is_subset(c)?;
        let c_in_rc = c.is_subset(rc)?;
        let equal = rc_in_c && c_in_rc;
        let rows_in_c = self
            .matrix()
            .row_vectors()
            .iter()
            .map(|r| c.contains(r))
            .collect::<Result<Vec<_>, _>>()?
            .into_iter()
            .all(|b| b);
        Ok(CrossChecks {
            rhc_iff_row_cone_inside: rhc == rc_in_c,
            extremal_test_iff_spectracone_inside: extremal_test == c_in_rc,
            all_ones_row_gives_spectracone_inside: all_ones.then_some(c_in_rc),
            all_ones_row_equal_iff_rhc: all_ones.then_some(equal == rhc),
            all_ones_row_equal_iff_rows_in_spectracone: all_ones.then_some(equal == rows_in_c),
            equal_iff_rhc_and_extremal_test: equal == (rhc && extremal_test),
        })
    }
}
