//! Dynamical embedding of the two-copy shuffle graph into a circle
//! rotation, and the stepping-stone model.
//!
//! For the mechanical word of slope `alpha` and intercept `rho`, the pair
//! `(i, j)` is a graph vertex exactly when the rotated points
//! `({i alpha}, {j alpha})` land in the planar set `K` determined by
//! `rho`. Membership is a single exact arithmetic test, so paths, the
//! dead/deterministic/free partition and the domain-exchange dynamics can
//! all be explored without touching the word itself.

use std::cmp::Ordering;

use crate::graph::{search2_core, CorePath, SearchParams, Strategy};
use crate::quad::QuadError;
use crate::sturmian::{mechanical, SturmianError, SturmianSpec};
use crate::words::InfiniteWord;
use crate::{Point, Quad};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StoneError {
    #[error("parameters must satisfy (1-rho)/2 < alpha < min(rho, 1-rho) strictly")]
    OutsideRegime,
    #[error("point must be classified as free, got {0:?}")]
    NotFree(Region),
    #[error("domain-exchange step landed in the dead set")]
    LandedDead,
    #[error("domain-exchange step did not settle within {0} forced moves")]
    ForcedLoop(usize),
    #[error("both one-step images are dead for a point outside the dead set")]
    DeadSetNotClosed,
    #[error(transparent)]
    Sturmian(#[from] SturmianError),
    #[error(transparent)]
    Quad(#[from] QuadError),
}

/// Slope and intercept of the embedded word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbeddingParams {
    spec: SturmianSpec,
    alpha: Quad,
    rho: Quad,
}

impl EmbeddingParams {
    pub fn new(alpha: Quad, rho: Quad) -> Result<Self, StoneError> {
        let spec = SturmianSpec::new(alpha, rho)?;
        Ok(EmbeddingParams { spec, alpha, rho })
    }

    pub fn alpha(&self) -> &Quad {
        &self.alpha
    }

    pub fn rho(&self) -> &Quad {
        &self.rho
    }

    pub fn word(&self) -> Result<InfiniteWord, SturmianError> {
        mechanical(&self.spec)
    }
}

/// `1_(x >= 1-rho) + 1_(y >= 1-rho) = floor(x + y + rho)`, evaluated
/// exactly.
pub fn in_k(x: &Point, y: &Point, rho: &Quad) -> Result<bool, QuadError> {
    let threshold = Quad::one().try_sub(rho)?;
    let ge = |p: &Point| -> Result<i128, QuadError> {
        Ok(match p.value().try_cmp(&threshold)? {
            Ordering::Less => 0,
            _ => 1,
        })
    };
    let lhs = ge(x)? + ge(y)?;
    let rhs = x
        .value()
        .try_add(y.value())?
        .try_add(rho)?
        .floor()?;
    Ok(lhs == rhs)
}

/// Orbit table `{i alpha}` for `0 <= i <= n`.
pub struct OrbitTable {
    points: Vec<Point>,
    alpha: Quad,
}

impl OrbitTable {
    pub fn new(alpha: &Quad, n: usize) -> Result<Self, QuadError> {
        let mut points = Vec::with_capacity(n + 1);
        let mut p = Point::zero();
        points.push(p);
        for _ in 0..n {
            p = p.rotate(alpha)?;
            points.push(p);
        }
        Ok(OrbitTable {
            points,
            alpha: *alpha,
        })
    }

    pub fn point(&self, i: usize) -> &Point {
        &self.points[i]
    }

    pub fn alpha(&self) -> &Quad {
        &self.alpha
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

#[derive(Debug, Clone)]
pub struct EquivReport {
    pub n_max: usize,
    pub checked: usize,
    /// First disagreement between the Parikh vertex condition and the
    /// embedded membership test, if any.
    pub counterexample: Option<(usize, usize)>,
}

impl EquivReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Compare the word-side vertex condition with the embedded `K` test for
/// all `i + j <= n_max`.
pub fn graph_vs_embedding_check(
    params: &EmbeddingParams,
    n_max: usize,
) -> Result<EquivReport, StoneError> {
    let word = params.word()?;
    let prefix = word.prefix(n_max + 1);
    let mut ones = vec![0u32; n_max + 2];
    for (i, l) in prefix.letters().iter().enumerate() {
        ones[i + 1] = ones[i] + l.index() as u32;
    }
    let orbit = OrbitTable::new(&params.alpha, n_max)?;
    // at rho = 1 the prefix count formula reads floor(n alpha + 1), which
    // the empty prefix does not satisfy; the embedding describes pairs of
    // nonempty prefixes there
    let start = if params.rho == Quad::one() { 1 } else { 0 };
    let mut checked = 0;
    for i in start..=n_max {
        for j in start..=(n_max - i) {
            let parikh = ones[i] + ones[j] == ones[i + j];
            let embedded = in_k(orbit.point(i), orbit.point(j), &params.rho)?;
            checked += 1;
            if parikh != embedded {
                return Ok(EquivReport {
                    n_max,
                    checked,
                    counterexample: Some((i, j)),
                });
            }
        }
    }
    Ok(EquivReport {
        n_max,
        checked,
        counterexample: None,
    })
}

/// The four-way split of the torus under the embedding, in the regime
/// `(1-rho)/2 < alpha < min(rho, 1-rho)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Region {
    /// Dead: outside `K`, or doomed in finitely many steps.
    Dead,
    /// Only the first-coordinate move survives.
    T1,
    /// Only the second-coordinate move survives.
    T2,
    /// Both one-step images stay out of the dead set.
    Free,
}

/// Check the regime hypothesis `(1-rho)/2 < alpha < min(rho, 1-rho)`.
pub fn regime_ok(alpha: &Quad, rho: &Quad) -> Result<bool, QuadError> {
    let one = Quad::one();
    let one_minus_rho = one.try_sub(rho)?;
    let half = one_minus_rho.mul_int(1)?; // (1-rho)
    let two_alpha = alpha.mul_int(2)?;
    // (1-rho)/2 < alpha  <=>  1-rho < 2 alpha
    let lower = half.try_cmp(&two_alpha)? == Ordering::Less;
    let upper1 = alpha.try_cmp(rho)? == Ordering::Less;
    let upper2 = alpha.try_cmp(&one_minus_rho)? == Ordering::Less;
    Ok(lower && upper1 && upper2)
}

/// Dead-set membership in the worked regime: outside `K`, or inside the
/// corner `{(x,y) in [0, 1-alpha-rho)^2 : x + y >= 1-alpha-rho}`, which is
/// exactly `D_1 and D_2 and K` there.
pub fn in_dead(x: &Point, y: &Point, params: &EmbeddingParams) -> Result<bool, StoneError> {
    if !in_k(x, y, &params.rho)? {
        return Ok(true);
    }
    let corner = Quad::one().try_sub(&params.alpha)?.try_sub(&params.rho)?;
    let xv = x.value();
    let yv = y.value();
    let in_square = xv.try_cmp(&corner)? == Ordering::Less && yv.try_cmp(&corner)? == Ordering::Less;
    if !in_square {
        return Ok(false);
    }
    let sum = xv.try_add(yv)?;
    Ok(sum.try_cmp(&corner)? != Ordering::Less)
}

/// Classify a point of the torus: dead, deterministic (one live move), or
/// free. Both one-step images are tested against the dead set exactly.
pub fn region_classify(x: &Point, y: &Point, params: &EmbeddingParams) -> Result<Region, StoneError> {
    if !regime_ok(&params.alpha, &params.rho)? {
        return Err(StoneError::OutsideRegime);
    }
    if in_dead(x, y, params)? {
        return Ok(Region::Dead);
    }
    let x_next = x.rotate(&params.alpha)?;
    let y_next = y.rotate(&params.alpha)?;
    let first_dies = in_dead(&x_next, y, params)?;
    let second_dies = in_dead(x, &y_next, params)?;
    match (first_dies, second_dies) {
        // both images dead would contradict minimality of the dead set
        (true, true) => Err(StoneError::DeadSetNotClosed),
        (false, true) => Ok(Region::T1),
        (true, false) => Ok(Region::T2),
        (false, false) => Ok(Region::Free),
    }
}

/// Transcript of one domain-exchange application.
#[derive(Debug, Clone)]
pub struct TildeStep {
    pub moved_first: bool,
    pub landed: Region,
}

#[derive(Debug, Clone)]
pub struct TildeResult {
    pub landing: (Point, Point),
    pub steps: Vec<TildeStep>,
}

/// Apply the branch-`i` domain-exchange map from a free point: one chosen
/// rotation, then forced rotations while the image sits in a
/// deterministic region, until it lands free again.
pub fn tilde_map(
    p: (Point, Point),
    branch: usize,
    params: &EmbeddingParams,
) -> Result<TildeResult, StoneError> {
    const FORCED_CAP: usize = 10_000;
    let start = region_classify(&p.0, &p.1, params)?;
    if start != Region::Free {
        return Err(StoneError::NotFree(start));
    }
    let mut steps = Vec::new();
    let mut cur = p;
    let mut mv = branch == 0;
    for _ in 0..FORCED_CAP {
        cur = if mv {
            (cur.0.rotate(&params.alpha)?, cur.1)
        } else {
            (cur.0, cur.1.rotate(&params.alpha)?)
        };
        let region = region_classify(&cur.0, &cur.1, params)?;
        steps.push(TildeStep {
            moved_first: mv,
            landed: region,
        });
        match region {
            Region::Free => {
                return Ok(TildeResult {
                    landing: cur,
                    steps,
                })
            }
            Region::T1 => mv = true,
            Region::T2 => mv = false,
            Region::Dead => return Err(StoneError::LandedDead),
        }
    }
    Err(StoneError::ForcedLoop(FORCED_CAP))
}

/// A monotone lattice path through the stepping stones.
#[derive(Debug, Clone)]
pub struct StonePath {
    pub pairs: Vec<(usize, usize)>,
}

#[derive(Debug)]
pub enum StoneOutcome {
    Path(StonePath),
    Dead { level: usize },
    Alive { truncated: bool },
}

/// Extract a stepping-stone path to `n_max` using the frontier walk with
/// the embedded membership test.
pub fn path_extract(params: &EmbeddingParams, n_max: usize) -> Result<StoneOutcome, StoneError> {
    let orbit = OrbitTable::new(&params.alpha, n_max)?;
    let rho = params.rho;
    let search = SearchParams {
        depth: n_max,
        strategy: Strategy::steady_default(2),
        max_tuples: 10_000_000,
    };
    let (path, _stats) = search2_core(&search, |i, j| {
        in_k(orbit.point(i), orbit.point(j), &rho).unwrap_or(false)
    });
    Ok(match path {
        CorePath::Found(symbols, _) => {
            let mut pairs = Vec::with_capacity(symbols.len() + 1);
            let (mut i, mut j) = (0usize, 0usize);
            pairs.push((i, j));
            for s in symbols {
                if s == 0 {
                    i += 1;
                } else {
                    j += 1;
                }
                pairs.push((i, j));
            }
            StoneOutcome::Path(StonePath { pairs })
        }
        CorePath::Dead { level } => StoneOutcome::Dead { level },
        CorePath::Alive { truncated } => StoneOutcome::Alive { truncated },
    })
}

/// Validate the three stepping-stone path conditions for a path.
pub fn check_stone_path(
    path: &StonePath,
    params: &EmbeddingParams,
) -> Result<Option<usize>, StoneError> {
    let n_max = path.pairs.len().saturating_sub(1);
    let orbit = OrbitTable::new(&params.alpha, n_max)?;
    for (n, (i, j)) in path.pairs.iter().enumerate() {
        if i + j != n {
            return Ok(Some(n));
        }
        if n > 0 {
            let (pi, pj) = path.pairs[n - 1];
            if !(*i == pi + 1 && *j == pj || *i == pi && *j == pj + 1) {
                return Ok(Some(n));
            }
        }
        if !in_k(orbit.point(*i), orbit.point(*j), &params.rho)? {
            return Ok(Some(n));
        }
    }
    Ok(None)
}

/// SVG rendering of `K + Z^2` over `[0, span)^2` with a path overlaid.
pub fn svg_render(params: &EmbeddingParams, path: Option<&StonePath>, span: usize) -> String {
    let cell = 96.0;
    let size = span as f64 * cell;
    let rho = params.rho.to_f64();
    let alpha = params.alpha.to_f64();
    let t = 1.0 - rho;
    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{size}\" height=\"{size}\" \
         viewBox=\"0 0 {size} {size}\">\n"
    ));
    out.push_str(&format!(
        "<rect width=\"{size}\" height=\"{size}\" fill=\"white\"/>\n"
    ));
    // K inside one unit cell, tiled; y axis flipped so the origin is the
    // bottom-left corner. Pieces: the triangle x+y < 1-rho, the two side
    // rectangles where exactly one coordinate passes 1-rho, and the corner
    // triangle x+y >= 2-rho.
    let polys: Vec<Vec<(f64, f64)>> = vec![
        vec![(0.0, 0.0), (t, 0.0), (0.0, t)],
        vec![(t, 0.0), (1.0, 0.0), (1.0, t), (t, t)],
        vec![(0.0, t), (t, t), (t, 1.0), (0.0, 1.0)],
        vec![(1.0, t), (1.0, 1.0), (t, 1.0)],
    ];
    out.push_str("<g fill=\"#9ecae1\" stroke=\"none\">\n");
    for bx in 0..span {
        for by in 0..span {
            for poly in &polys {
                let pts: Vec<String> = poly
                    .iter()
                    .map(|(x, y)| {
                        let px = (bx as f64 + x) * cell;
                        let py = size - (by as f64 + y) * cell;
                        format!("{px:.2},{py:.2}")
                    })
                    .collect();
                out.push_str(&format!("<polygon points=\"{}\"/>\n", pts.join(" ")));
            }
        }
    }
    out.push_str("</g>\n");
    if let Some(path) = path {
        out.push_str("<g fill=\"#d7301f\">\n");
        for (i, j) in &path.pairs {
            let x = (*i as f64) * alpha;
            let y = (*j as f64) * alpha;
            if x < span as f64 && y < span as f64 {
                let px = x * cell;
                let py = size - y * cell;
                out.push_str(&format!("<circle cx=\"{px:.2}\" cy=\"{py:.2}\" r=\"4\"/>\n"));
            }
        }
        out.push_str("</g>\n");
    }
    out.push_str("</svg>\n");
    out
}

/// CSV rendering of a path: `n,i,j,x_frac_approx,y_frac_approx,approx`.
pub fn csv_render(params: &EmbeddingParams, path: &StonePath) -> Result<String, StoneError> {
    let n_max = path.pairs.len().saturating_sub(1);
    let orbit = OrbitTable::new(&params.alpha, n_max)?;
    let mut out = String::from("n,i,j,x_frac_approx,y_frac_approx,approx\n");
    for (n, (i, j)) in path.pairs.iter().enumerate() {
        let x = orbit.point(*i).value().to_f64();
        let y = orbit.point(*j).value().to_f64();
        out.push_str(&format!("{n},{i},{j},{x:.12},{y:.12},true\n"));
    }
    Ok(out)
}
