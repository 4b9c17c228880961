//! Stage-by-stage cohomology comparison along the weight filtration.

use std::collections::BTreeSet;

use super::{FilteredMorphism, MorphismError};
use crate::exactlin::{cohomology_of, span_rank, LinearMap, Rational, Vector};
use crate::linf::LInftyAlgebra;

/// The map induced on `H^degree` by a chain map, in the chosen cohomology bases.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedCohomology {
    pub degree: i32,
    pub source_dim: usize,
    pub target_dim: usize,
    pub rank: usize,
    /// `matrix[j]` holds the target class coordinates of the image of source class `j`.
    pub matrix: Vec<Vec<Rational>>,
}

impl InducedCohomology {
    pub fn is_iso(&self) -> bool {
        self.source_dim == self.target_dim && self.rank == self.source_dim
    }

    pub fn is_injective(&self) -> bool {
        self.rank == self.source_dim
    }

    pub fn is_surjective(&self) -> bool {
        self.rank == self.target_dim
    }
}

/// `H(f)` in one degree for complexes `(C, ds)`, `(D, dt)` and a chain map `f: C → D`.
pub fn induced_cohomology(
    ds: &LinearMap,
    dt: &LinearMap,
    f: &LinearMap,
    degree: i32,
) -> Result<InducedCohomology, MorphismError> {
    let hs = cohomology_of(ds, degree)?;
    let ht = cohomology_of(dt, degree)?;
    let mut matrix = Vec::with_capacity(hs.dimension);
    for r in &hs.representatives {
        let img = f.apply(r);
        let class = ht.class_of(&img).ok_or_else(|| {
            MorphismError::Malformed(format!(
                "image of the cocycle {} is not a cocycle",
                r.display(&ds.source)
            ))
        })?;
        matrix.push(class);
    }
    let cols: Vec<Vector> = matrix.iter().map(|c| Vector::from_dense(c)).collect();
    let rank = span_rank(&cols, ht.dimension);
    Ok(InducedCohomology {
        degree,
        source_dim: hs.dimension,
        target_dim: ht.dimension,
        rank,
        matrix,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stage {
    /// `F_w / F_{w+1}`.
    Graded(u32),
    /// `𝔤 / F_r`.
    Quotient(u32),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StageReport {
    pub stage: Stage,
    pub degrees: Vec<InducedCohomology>,
}

impl StageReport {
    pub fn quasi_iso(&self) -> bool {
        self.degrees.iter().all(InducedCohomology::is_iso)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StagewiseReport {
    pub truncation: u32,
    pub stages: Vec<StageReport>,
}

impl StagewiseReport {
    pub fn graded_quasi_iso(&self) -> bool {
        self.stages
            .iter()
            .filter(|s| matches!(s.stage, Stage::Graded(_)))
            .all(StageReport::quasi_iso)
    }

    pub fn quotients_quasi_iso(&self) -> bool {
        self.stages
            .iter()
            .filter(|s| matches!(s.stage, Stage::Quotient(_)))
            .all(StageReport::quasi_iso)
    }

    pub fn passes(&self) -> bool {
        self.graded_quasi_iso() && self.quotients_quasi_iso()
    }
}

/// Indices selected by `keep` and the component of `l_1` among them.
fn slice_complex(g: &LInftyAlgebra, keep: &[usize]) -> (Vec<Option<usize>>, LinearMap) {
    let mut pos = vec![None; g.dim()];
    for (k, &i) in keep.iter().enumerate() {
        pos[i] = Some(k);
    }
    let space = g.space.restrict(keep);
    let columns = keep
        .iter()
        .map(|&i| g.bracket_basis(&[i]).reindex(|j| pos[j]))
        .collect();
    let d = LinearMap {
        source: space.clone(),
        target: space,
        shift: 1,
        columns,
    };
    (pos, d)
}

fn compare_slices(
    f: &FilteredMorphism,
    stage: Stage,
    pick: impl Fn(u32) -> bool,
) -> Result<StageReport, MorphismError> {
    let keep_s: Vec<usize> = (0..f.source.dim())
        .filter(|&i| pick(f.source.space.weight(i)))
        .collect();
    let keep_t: Vec<usize> = (0..f.target.dim())
        .filter(|&i| pick(f.target.space.weight(i)))
        .collect();
    let (_, ds) = slice_complex(&f.source, &keep_s);
    let (pos_t, dt) = slice_complex(&f.target, &keep_t);
    let fm = LinearMap {
        source: ds.source.clone(),
        target: dt.source.clone(),
        shift: 0,
        columns: keep_s
            .iter()
            .map(|&i| f.map.columns[i].reindex(|j| pos_t[j]))
            .collect(),
    };
    let degrees: BTreeSet<i32> = ds
        .source
        .degrees()
        .into_iter()
        .chain(dt.source.degrees())
        .collect();
    let mut out = Vec::new();
    for deg in degrees {
        out.push(induced_cohomology(&ds, &dt, &fm, deg)?);
    }
    Ok(StageReport {
        stage,
        degrees: out,
    })
}

/// Compares cohomology of the graded pieces `F_w/F_{w+1}` for `1 ≤ w < R` and of the
/// quotients `𝔤/F_r` for `2 ≤ r ≤ R`.
pub fn stagewise_quasi_iso(
    f: &FilteredMorphism,
    truncation: u32,
) -> Result<StagewiseReport, MorphismError> {
    let mut stages = Vec::new();
    let low = (0..f.source.dim())
        .map(|i| f.source.space.weight(i))
        .chain((0..f.target.dim()).map(|i| f.target.space.weight(i)))
        .min()
        .unwrap_or(1);
    for w in low..truncation {
        stages.push(compare_slices(f, Stage::Graded(w), |x| x == w)?);
    }
    for r in low + 1..=truncation {
        stages.push(compare_slices(f, Stage::Quotient(r), |x| x < r)?);
    }
    Ok(StagewiseReport { truncation, stages })
}
