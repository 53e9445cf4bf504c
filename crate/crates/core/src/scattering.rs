//! Rank-2 scattering diagrams: cooriented walls through the origin, crossing
//! sequences and path-ordered products around loops, Kontsevich-Soibelman
//! completion, and minimalization.
//!
//! Orientation bookkeeping is fixed once and validated by the golden
//! examples rather than assumed: `rotate90` is the counterclockwise quarter
//! turn (p,q) -> (-q,p); a crossing picks up exponent +1 exactly when the
//! loop's tangent pairs negatively with the wall's coorientation (the loop
//! leaves the nu-positive half plane); the first factor crossed is the
//! rightmost factor of the operator product.  Completion coorients inserted
//! rays by rotate90 of the ray direction, so the standard anticlockwise loop
//! crosses every inserted ray with exponent -1 and the stored log is the
//! stage defect itself.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::lie::{log_product, LieElement};
use crate::scalar::Scalar;
use crate::series::{pairing, DualVector, LatticeVector};

/// Counterclockwise quarter turn in the base plane.
pub fn rotate90(v: &LatticeVector) -> LatticeVector {
    assert_eq!(v.0.len(), 2, "rank-2 only");
    LatticeVector(vec![-v.0[1], v.0[0]])
}

fn cross(u: &LatticeVector, v: &LatticeVector) -> i128 {
    u.0[0] as i128 * v.0[1] as i128 - u.0[1] as i128 * v.0[0] as i128
}

fn dot(u: &LatticeVector, v: &LatticeVector) -> i128 {
    u.0[0] as i128 * v.0[0] as i128 + u.0[1] as i128 * v.0[1] as i128
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScatterError {
    #[error("start ray lies on a wall support")]
    StartRayOnSupport,
    #[error("invalid wall: {0}")]
    InvalidWall(String),
    #[error("unsupported diagram: {0}")]
    UnsupportedDiagram(String),
    #[error("defect direction ({0}, {1}) is not a strictly positive integer combination of the seed modes")]
    ConeViolation(i64, i64),
    #[error("path-ordered product does not vanish after stage {stage} insertions")]
    MonodromyFailure { stage: u32 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum SupportKind {
    Ray,
    Line,
}

/// A wall's carrier: a ray or full line through the origin.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Support {
    pub kind: SupportKind,
    pub direction: LatticeVector,
}

impl Support {
    pub fn ray(direction: LatticeVector) -> Self {
        Support { kind: SupportKind::Ray, direction }
    }

    pub fn line(direction: LatticeVector) -> Self {
        Support { kind: SupportKind::Line, direction }
    }
}

/// A wall: primitive Fourier mode, support, primitive coorientation normal
/// to the support, and the log of its crossing automorphism.
///
/// The pair (nu, log) is gauge data: (-nu, -log) describes the same wall.
#[derive(Debug, Clone, PartialEq)]
pub struct Wall<S> {
    pub mode: LatticeVector,
    pub support: Support,
    pub coorientation: DualVector,
    pub log_factor: LieElement<S>,
}

impl<S: Scalar> Wall<S> {
    pub fn validate(&self) -> Result<(), ScatterError> {
        let err = |msg: &str| Err(ScatterError::InvalidWall(msg.to_string()));
        if self.mode.0.len() != 2 || self.support.direction.0.len() != 2 || self.coorientation.0.len() != 2 {
            return err("mode, support, and coorientation must live in the rank-2 base");
        }
        if self.mode.is_zero() || self.mode != self.mode.primitive() {
            return err("mode must be primitive");
        }
        let dir = &self.support.direction;
        if dir.is_zero() || *dir != dir.primitive() {
            return err("support direction must be primitive");
        }
        match self.support.kind {
            SupportKind::Ray => {
                if *dir != self.mode {
                    return err("a ray wall must point along its mode");
                }
            }
            SupportKind::Line => {
                if *dir != self.mode && *dir != self.mode.neg() {
                    return err("a line wall must be parallel to its mode");
                }
            }
        }
        let nu = &self.coorientation;
        if nu.is_zero() || pairing(dir, nu) != 0 {
            return err("coorientation must be a nonzero normal of the support");
        }
        let nu_vec = LatticeVector(nu.0.clone());
        if nu_vec != nu_vec.primitive() {
            return err("coorientation must be primitive");
        }
        if self.log_factor.rank() != 2 {
            return err("wall log must have rank-2 monomials");
        }
        if self.log_factor.min_t_order() == Some(0) {
            return err("wall log must lie in the parameter ideal");
        }
        for (m, _) in self.log_factor.components() {
            if m.is_zero() || m.primitive() != self.mode.neg() {
                return err("wall log monomials must be negative multiples of the mode");
            }
        }
        if !self.log_factor.is_tangent() {
            return err("wall log directions must annihilate the monomials");
        }
        Ok(())
    }

    /// Same wall in the opposite gauge.
    fn gauge_flipped(&self) -> Self {
        Wall {
            mode: self.mode.clone(),
            support: self.support.clone(),
            coorientation: DualVector(self.coorientation.0.iter().map(|c| -c).collect()),
            log_factor: self.log_factor.neg(),
        }
    }
}

/// A scattering diagram over a fixed truncation order.  All wall logs share
/// the diagram's parameter count and truncation.
#[derive(Debug, Clone, PartialEq)]
pub struct Diagram<S> {
    pub params: usize,
    pub max_order: u32,
    pub walls: Vec<Wall<S>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    Anticlockwise,
    Clockwise,
}

/// A full turn around the origin, starting at a primitive direction that
/// must not lie on any wall support.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Loop {
    pub start_ray: LatticeVector,
    pub orientation: Orientation,
}

impl Loop {
    pub fn anticlockwise(start_ray: LatticeVector) -> Self {
        Loop { start_ray, orientation: Orientation::Anticlockwise }
    }

    pub fn clockwise(start_ray: LatticeVector) -> Self {
        Loop { start_ray, orientation: Orientation::Clockwise }
    }
}

/// One ray crossing: wall index, crossing direction, exponent sign.
struct Crossing {
    wall: usize,
    direction: LatticeVector,
    sign: i8,
}

impl<S: Scalar> Diagram<S> {
    pub fn new(params: usize, max_order: u32, walls: Vec<Wall<S>>) -> Result<Self, ScatterError> {
        let d = Diagram { params, max_order, walls };
        d.validate()?;
        Ok(d)
    }

    pub fn rank(&self) -> usize {
        2
    }

    /// The same diagram reduced mod the (order+1)-st power of the parameter
    /// ideal.  Only lowering is meaningful: raising would claim coefficients
    /// the stored truncation never pinned.
    pub fn truncated(&self, order: u32) -> Self {
        assert!(order <= self.max_order, "cannot raise a diagram's truncation order");
        let walls = self
            .walls
            .iter()
            .map(|w| Wall { log_factor: w.log_factor.truncated(order), ..w.clone() })
            .collect();
        Diagram { params: self.params, max_order: order, walls }
    }

    pub fn validate(&self) -> Result<(), ScatterError> {
        for w in &self.walls {
            w.validate()?;
            if w.log_factor.params() != self.params || w.log_factor.max_order() != self.max_order {
                return Err(ScatterError::InvalidWall(
                    "wall log parameters or truncation disagree with the diagram".to_string(),
                ));
            }
        }
        Ok(())
    }

    /// Every ray crossing of the loop: line walls contribute one crossing per
    /// side, sharing the line's coorientation and log.
    fn expanded_crossings(&self, lp: &Loop) -> Result<Vec<Crossing>, ScatterError> {
        let mut out = Vec::new();
        for (i, w) in self.walls.iter().enumerate() {
            let mut dirs = vec![w.support.direction.clone()];
            if w.support.kind == SupportKind::Line {
                dirs.push(w.support.direction.neg());
            }
            for dir in dirs {
                if cross(&lp.start_ray, &dir) == 0 && dot(&lp.start_ray, &dir) > 0 {
                    return Err(ScatterError::StartRayOnSupport);
                }
                let sign = crossing_sign(lp.orientation, &dir, &w.coorientation);
                out.push(Crossing { wall: i, direction: dir, sign });
            }
        }
        Ok(out)
    }

    /// Walls in the order the loop meets them, with crossing exponents.
    /// Exact integer geometry; ties between parallel supports are broken by
    /// mode, then wall index (legal: same-support factors commute).
    pub fn crossing_sequence(&self, lp: &Loop) -> Result<Vec<(usize, i8)>, ScatterError> {
        let mut crossings = self.expanded_crossings(lp)?;
        let flip: i128 = match lp.orientation {
            Orientation::Anticlockwise => 1,
            Orientation::Clockwise => -1,
        };
        let region = |u: &LatticeVector| -> u8 {
            let c = cross(&lp.start_ray, u) * flip;
            if c > 0 {
                1
            } else if c == 0 {
                2 // antipodal to the start ray
            } else {
                3
            }
        };
        crossings.sort_by(|x, y| {
            let (rx, ry) = (region(&x.direction), region(&y.direction));
            rx.cmp(&ry)
                .then_with(|| 0.cmp(&(cross(&x.direction, &y.direction) * flip)))
                .then_with(|| self.walls[x.wall].mode.0.cmp(&self.walls[y.wall].mode.0))
                .then_with(|| x.wall.cmp(&y.wall))
        });
        Ok(crossings.into_iter().map(|c| (c.wall, c.sign)).collect())
    }

    /// Log of the ordered product of crossing factors; the first factor
    /// crossed is the rightmost, so `factors[0]` acts first.
    pub fn path_ordered_product(&self, lp: &Loop) -> Result<LieElement<S>, ScatterError> {
        let seq = self.crossing_sequence(lp)?;
        let factors: Vec<LieElement<S>> = seq
            .iter()
            .filter(|(i, _)| !self.walls[*i].log_factor.is_zero())
            .map(|(i, sign)| {
                let log = &self.walls[*i].log_factor;
                if *sign > 0 { log.clone() } else { log.neg() }
            })
            .collect();
        if factors.is_empty() {
            return Ok(LieElement::zero(self.params, 2, self.max_order));
        }
        Ok(log_product(&factors))
    }

    /// Monodromy freedom, checked from two different base sectors.
    pub fn is_consistent(&self) -> bool {
        self.free_start_rays(2).iter().all(|s| {
            self.path_ordered_product(&Loop::anticlockwise(s.clone()))
                .map(|p| p.is_zero())
                .unwrap_or(false)
        })
    }

    /// Deterministic primitive directions parallel to no wall support,
    /// enumerated by increasing coordinate size.
    fn free_start_rays(&self, count: usize) -> Vec<LatticeVector> {
        let mut dirs: Vec<LatticeVector> = Vec::new();
        for w in &self.walls {
            dirs.push(w.support.direction.clone());
        }
        let mut out = Vec::new();
        let mut total: i64 = 1;
        while out.len() < count {
            for p in -total..=total {
                for q in [-(total - p.abs()), total - p.abs()] {
                    let v = LatticeVector(vec![p, q]);
                    if v.is_zero() || v != v.primitive() {
                        continue;
                    }
                    if dirs.iter().any(|d| cross(d, &v) == 0) {
                        continue;
                    }
                    if out.contains(&v) {
                        continue;
                    }
                    out.push(v.clone());
                    if out.len() == count {
                        return out;
                    }
                }
            }
            total += 1;
        }
        out
    }

    /// Drops walls that vanish at this truncation and merges walls sharing
    /// support and mode (gauge-matching coorientations first).  Factors on a
    /// shared support commute, so merging adds logs.
    pub fn minimalize(&self) -> Self {
        let mut walls: Vec<Wall<S>> = Vec::new();
        let mut index: BTreeMap<(SupportKind, Vec<i64>, Vec<i64>), usize> = BTreeMap::new();
        for w in &self.walls {
            // A line and its reversal carry the same support.
            let canon_dir = match w.support.kind {
                SupportKind::Ray => w.support.direction.clone(),
                SupportKind::Line => {
                    let d = w.support.direction.clone();
                    if d.0 < d.neg().0 { d } else { d.neg() }
                }
            };
            let key = (w.support.kind, canon_dir.0, w.mode.0.clone());
            match index.get(&key) {
                Some(&i) => {
                    let aligned = if walls[i].coorientation == w.coorientation {
                        w.clone()
                    } else {
                        w.gauge_flipped()
                    };
                    debug_assert_eq!(walls[i].coorientation, aligned.coorientation);
                    walls[i].log_factor.add_assign(&aligned.log_factor);
                }
                None => {
                    index.insert(key, walls.len());
                    walls.push(w.clone());
                }
            }
        }
        walls.retain(|w| !w.log_factor.is_zero());
        Diagram { params: self.params, max_order: self.max_order, walls }
    }

    /// Kontsevich-Soibelman completion of a standard two-wall seed: stage by
    /// stage, the order-k defect of the loop product is cancelled by rays in
    /// the open cone of the seed modes, and the cancellation is re-verified
    /// before the next stage.  Diagrams with at most one wall have nothing to
    /// scatter; consistent diagrams are already complete.
    pub fn complete(&self) -> Result<Self, ScatterError> {
        self.validate()?;
        if self.walls.len() <= 1 {
            return Ok(self.clone());
        }
        if self.walls.len() != 2 {
            if self.is_consistent() {
                return Ok(self.minimalize());
            }
            return Err(ScatterError::UnsupportedDiagram(
                "completion requires a standard two-wall seed".to_string(),
            ));
        }
        let (m1, m2) = (self.walls[0].mode.clone(), self.walls[1].mode.clone());
        for w in &self.walls {
            if w.support.kind != SupportKind::Line {
                return Err(ScatterError::UnsupportedDiagram(
                    "seed walls must be lines through the origin".to_string(),
                ));
            }
        }
        let det = cross(&m1, &m2);
        if det == 0 {
            return Err(ScatterError::UnsupportedDiagram("seed modes must not be parallel".to_string()));
        }
        let p1 = param_support(&self.walls[0].log_factor);
        let p2 = param_support(&self.walls[1].log_factor);
        if p1.len() > 1 || p2.len() > 1 || (p1.len() == 1 && p1 == p2) {
            return Err(ScatterError::UnsupportedDiagram(
                "each seed log must use exactly one parameter, distinct per wall".to_string(),
            ));
        }

        let start = m1.add(&m2).neg().primitive();
        let lp = Loop::anticlockwise(start);
        let mut walls = self.walls.clone();
        let mut ray_index: BTreeMap<Vec<i64>, usize> = BTreeMap::new();

        for k in 1..=self.max_order {
            let view = self.stage_view(&walls, k);
            let defect = view.path_ordered_product(&lp)?;
            // Earlier stages cleared everything below order k.
            assert!(
                defect == defect.order_part(k),
                "stage {} defect has parts of lower order",
                k
            );
            if defect.is_zero() {
                continue;
            }
            let mut buckets: BTreeMap<LatticeVector, LieElement<S>> = BTreeMap::new();
            for (m, col) in defect.components() {
                let a = m.neg().primitive();
                buckets
                    .entry(a)
                    .or_insert_with(|| LieElement::zero(self.params, 2, k))
                    .add_column(m, col);
            }
            for (a, d_a) in buckets {
                // a = alpha m1 + beta m2 with integer alpha, beta > 0.
                let alpha_num = cross(&a, &m2);
                let beta_num = cross(&m1, &a);
                let integral = alpha_num % det == 0 && beta_num % det == 0;
                if !integral || alpha_num * det <= 0 || beta_num * det <= 0 {
                    return Err(ScatterError::ConeViolation(a.0[0], a.0[1]));
                }
                let nu = DualVector(rotate90(&a).0);
                let eps = crossing_sign(lp.orientation, &a, &nu);
                let add = d_a.scale(&S::from_int(-i64::from(eps))).with_max_order(self.max_order);
                match ray_index.get(&a.0) {
                    Some(&i) => walls[i].log_factor.add_assign(&add),
                    None => {
                        ray_index.insert(a.0.clone(), walls.len());
                        walls.push(Wall {
                            mode: a.clone(),
                            support: Support::ray(a),
                            coorientation: nu,
                            log_factor: add,
                        });
                    }
                }
            }
            let reverified = self.stage_view(&walls, k).path_ordered_product(&lp)?;
            if !reverified.is_zero() {
                return Err(ScatterError::MonodromyFailure { stage: k });
            }
        }
        Ok(Diagram { params: self.params, max_order: self.max_order, walls }.minimalize())
    }

    /// The diagram reduced mod m^(k+1): same walls, logs truncated at k.
    fn stage_view(&self, walls: &[Wall<S>], k: u32) -> Diagram<S> {
        let truncated = walls
            .iter()
            .map(|w| Wall {
                mode: w.mode.clone(),
                support: w.support.clone(),
                coorientation: w.coorientation.clone(),
                log_factor: w.log_factor.truncated(k),
            })
            .collect();
        Diagram { params: self.params, max_order: k, walls: truncated }
    }
}

/// Exponent the loop assigns to a crossing: +1 iff the tangent at the
/// crossing pairs negatively with the coorientation.
fn crossing_sign(orientation: Orientation, direction: &LatticeVector, nu: &DualVector) -> i8 {
    let tangent = rotate90(direction);
    let mut p = pairing(&tangent, nu);
    if orientation == Orientation::Clockwise {
        p = -p;
    }
    assert!(p != 0, "coorientation must be normal to the support");
    if p < 0 {
        1
    } else {
        -1
    }
}

/// Indices of parameters actually used by an element's coefficients.
fn param_support<S: Scalar>(e: &LieElement<S>) -> Vec<usize> {
    let mut used = vec![false; e.params()];
    for (_, col) in e.components() {
        for f in col {
            for (key, _) in f.terms() {
                for (i, &exp) in key.j.0.iter().enumerate() {
                    if exp > 0 {
                        used[i] = true;
                    }
                }
            }
        }
    }
    (0..e.params()).filter(|&i| used[i]).collect()
}

impl<S: Scalar + fmt::Display> fmt::Display for Wall<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.support.kind {
            SupportKind::Ray => "ray",
            SupportKind::Line => "line",
        };
        let fmt_vec = |v: &[i64]| {
            v.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
        };
        write!(
            f,
            "{} ({}) nu ({}): {}",
            kind,
            fmt_vec(&self.support.direction.0),
            fmt_vec(&self.coorientation.0),
            self.log_factor
        )
    }
}

impl<S: Scalar + fmt::Display> fmt::Display for Diagram<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "diagram: {} walls, order {}", self.walls.len(), self.max_order)?;
        for w in &self.walls {
            writeln!(f, "  {}", w)?;
        }
        Ok(())
    }
}
