//! Discrete forms on finite windows of ℤ².
//!
//! A form of degree `r` is stored densely over a centered square window
//! `-n ≤ k, s ≤ n`. Degree 0 and 2 forms carry one coefficient array, degree
//! 1 forms carry two (`u` along the `k` direction, `v` along `s`). Every
//! coefficient outside the window is zero, which embeds the stored form into
//! the compactly supported forms on the whole lattice.

use std::fmt;

use thiserror::Error;

use crate::C64;

#[derive(Debug, Error)]
pub enum CochainError {
    #[error("invalid form degree {0}, expected 0, 1 or 2")]
    InvalidDegree(i64),
    #[error("non-finite coefficient {value} at ({k}, {s}) in component {slot}")]
    NonFinite { slot: usize, k: i64, s: i64, value: C64 },
    #[error("component {component:?} is not defined for a {degree}-form")]
    ComponentMismatch { degree: Degree, component: Component },
    #[error("degree mismatch: {left}-form against {right}-form")]
    DegreeMismatch { left: Degree, right: Degree },
    #[error("a {degree}-form has {expected} component arrays, found {found}")]
    ComponentCount { degree: Degree, expected: usize, found: usize },
    #[error("component array {slot} has length {found}, window of half-width {n} needs {expected}")]
    ArrayLength { slot: usize, n: usize, expected: usize, found: usize },
    #[error("cup product of a {left}-form and a {right}-form exceeds degree 2")]
    CupDegree { left: Degree, right: Degree },
    #[error("malformed cochain document: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("malformed cochain document: {0}")]
    Malformed(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = CochainError> = std::result::Result<T, E>;

/// A lattice site `(k, s)`; `k` indexes columns, `s` rows.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GridIndex {
    pub k: i64,
    pub s: i64,
}

impl GridIndex {
    pub const ORIGIN: GridIndex = GridIndex { k: 0, s: 0 };

    pub const fn new(k: i64, s: i64) -> Self {
        Self { k, s }
    }

    pub const fn shifted(self, dk: i64, ds: i64) -> Self {
        Self::new(self.k + dk, self.s + ds)
    }

    /// Chebyshev radius `max(|k|, |s|)`: the half-width of the smallest
    /// window containing this site.
    pub fn radius(self) -> usize {
        self.k.unsigned_abs().max(self.s.unsigned_abs()) as usize
    }
}

impl fmt::Display for GridIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.k, self.s)
    }
}

/// Centered square window `{ (k, s) : -n ≤ k, s ≤ n }`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Window {
    n: usize,
}

impl Window {
    pub const fn new(half_width: usize) -> Self {
        Self { n: half_width }
    }

    pub const fn half_width(self) -> usize {
        self.n
    }

    /// Number of sites along one side, `2n + 1`.
    pub const fn side(self) -> usize {
        2 * self.n + 1
    }

    /// Number of sites, `(2n + 1)²`.
    pub const fn len(self) -> usize {
        self.side() * self.side()
    }

    pub const fn is_empty(self) -> bool {
        false
    }

    pub fn contains(self, idx: GridIndex) -> bool {
        let n = self.n as i64;
        -n <= idx.k && idx.k <= n && -n <= idx.s && idx.s <= n
    }

    /// Row-major storage offset `(k + n)(2n + 1) + (s + n)`, or `None` outside.
    pub fn offset(self, idx: GridIndex) -> Option<usize> {
        if !self.contains(idx) {
            return None;
        }
        let n = self.n as i64;
        Some(((idx.k + n) as usize) * self.side() + (idx.s + n) as usize)
    }

    /// Inverse of [`Window::offset`].
    pub fn index_at(self, offset: usize) -> GridIndex {
        let n = self.n as i64;
        let side = self.side();
        GridIndex::new((offset / side) as i64 - n, (offset % side) as i64 - n)
    }

    pub fn grown(self, by: usize) -> Self {
        Self::new(self.n + by)
    }

    /// Sites in storage order (`s` fastest).
    pub fn sites(self) -> impl Iterator<Item = GridIndex> {
        let n = self.n as i64;
        (-n..=n).flat_map(move |k| (-n..=n).map(move |s| GridIndex::new(k, s)))
    }

    /// True if `idx` is on the outermost ring of the window.
    pub fn on_edge(self, idx: GridIndex) -> bool {
        self.contains(idx) && idx.radius() == self.n
    }
}

/// Form degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Degree {
    Zero,
    One,
    Two,
}

impl Degree {
    pub const ALL: [Degree; 3] = [Degree::Zero, Degree::One, Degree::Two];

    pub fn from_int(r: i64) -> Result<Self> {
        match r {
            0 => Ok(Degree::Zero),
            1 => Ok(Degree::One),
            2 => Ok(Degree::Two),
            other => Err(CochainError::InvalidDegree(other)),
        }
    }

    pub const fn as_int(self) -> i64 {
        match self {
            Degree::Zero => 0,
            Degree::One => 1,
            Degree::Two => 2,
        }
    }

    /// 1 for scalar degrees, 2 for 1-forms.
    pub const fn component_count(self) -> usize {
        match self {
            Degree::One => 2,
            _ => 1,
        }
    }

    /// The Hodge-dual degree `2 - r`.
    pub const fn dual(self) -> Self {
        match self {
            Degree::Zero => Degree::Two,
            Degree::One => Degree::One,
            Degree::Two => Degree::Zero,
        }
    }

    pub const fn next(self) -> Option<Self> {
        match self {
            Degree::Zero => Some(Degree::One),
            Degree::One => Some(Degree::Two),
            Degree::Two => None,
        }
    }

    pub const fn prev(self) -> Option<Self> {
        match self {
            Degree::Zero => None,
            Degree::One => Some(Degree::Zero),
            Degree::Two => Some(Degree::One),
        }
    }

    /// Components that can be selected on a form of this degree.
    pub fn components(self) -> &'static [Component] {
        match self {
            Degree::One => &[Component::U, Component::V],
            _ => &[Component::Scalar],
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_int())
    }
}

/// Coefficient selector: `Scalar` for 0- and 2-forms, `U`/`V` for the
/// `e₁`/`e₂` parts of a 1-form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Component {
    Scalar,
    U,
    V,
}

impl Component {
    /// Storage slot for this component on a form of `degree`.
    pub fn slot(self, degree: Degree) -> Result<usize> {
        match (degree, self) {
            (Degree::One, Component::U) => Ok(0),
            (Degree::One, Component::V) => Ok(1),
            (Degree::Zero | Degree::Two, Component::Scalar) => Ok(0),
            _ => Err(CochainError::ComponentMismatch { degree, component: self }),
        }
    }

    fn from_slot(degree: Degree, slot: usize) -> Self {
        degree.components()[slot]
    }
}

/// A discrete `r`-form on a window, zero outside it.
///
/// A cochain can also be a *structural zero*: the image of an operator whose
/// target degree does not exist (coboundary of a 2-form, codifferential of a
/// 0-form). It is an all-zero form of the nearest valid degree carrying a
/// flag, and acts as the additive identity.
#[derive(Clone, Debug, PartialEq)]
pub struct Cochain {
    degree: Degree,
    window: Window,
    components: Vec<Vec<C64>>,
    structural_zero: bool,
}

impl Cochain {
    pub fn zeros(degree: Degree, window: Window) -> Self {
        Self {
            degree,
            window,
            components: vec![vec![C64::new(0.0, 0.0); window.len()]; degree.component_count()],
            structural_zero: false,
        }
    }

    /// Designated zero returned where the target degree would be -1 or 3.
    pub fn structural_zero(degree: Degree) -> Self {
        Self { structural_zero: true, ..Self::zeros(degree, Window::new(0)) }
    }

    pub fn constant(degree: Degree, window: Window, value: C64) -> Result<Self> {
        Self::from_fn(degree, window, |_, _| value)
    }

    /// Build from a coefficient function `fill(component, site)`.
    pub fn from_fn<F>(degree: Degree, window: Window, mut fill: F) -> Result<Self>
    where
        F: FnMut(Component, GridIndex) -> C64,
    {
        let components = degree
            .components()
            .iter()
            .map(|&c| window.sites().map(|idx| fill(c, idx)).collect())
            .collect();
        Self::from_components(degree, window, components)
    }

    /// Build from raw row-major arrays, checking shape and finiteness.
    pub fn from_components(degree: Degree, window: Window, components: Vec<Vec<C64>>) -> Result<Self> {
        let expected = degree.component_count();
        if components.len() != expected {
            return Err(CochainError::ComponentCount { degree, expected, found: components.len() });
        }
        for (slot, values) in components.iter().enumerate() {
            if values.len() != window.len() {
                return Err(CochainError::ArrayLength {
                    slot,
                    n: window.half_width(),
                    expected: window.len(),
                    found: values.len(),
                });
            }
            if let Some(pos) = values.iter().position(|z| !z.is_finite()) {
                let idx = window.index_at(pos);
                return Err(CochainError::NonFinite { slot, k: idx.k, s: idx.s, value: values[pos] });
            }
        }
        Ok(Self { degree, window, components, structural_zero: false })
    }

    /// Unchecked constructor for operator outputs, which are finite whenever
    /// their inputs are.
    pub(crate) fn from_parts(degree: Degree, window: Window, components: Vec<Vec<C64>>) -> Self {
        debug_assert_eq!(components.len(), degree.component_count());
        debug_assert!(components.iter().all(|c| c.len() == window.len()));
        Self { degree, window, components, structural_zero: false }
    }

    /// The basis element with a unit coefficient at `idx` (`x^{k,s}`,
    /// `e₁^{k,s}`, `e₂^{k,s}` or `Ω^{k,s}`), on the smallest window holding it.
    pub fn basis(degree: Degree, component: Component, idx: GridIndex) -> Result<Self> {
        Self::basis_on(degree, component, idx, Window::new(idx.radius()))
    }

    pub fn basis_on(degree: Degree, component: Component, idx: GridIndex, window: Window) -> Result<Self> {
        let slot = component.slot(degree)?;
        let mut form = Self::zeros(degree, window);
        if let Some(off) = window.offset(idx) {
            form.components[slot][off] = C64::new(1.0, 0.0);
        }
        Ok(form)
    }

    /// Discrete Dirac delta `δ^{m,n}`: the 0-form with `(φ, δ^{m,n}) = φ_{m,n}`.
    pub fn delta(site: GridIndex, window: Window) -> Self {
        Self::basis_on(Degree::Zero, Component::Scalar, site, window).expect("scalar slot")
    }

    pub fn degree(&self) -> Degree {
        self.degree
    }

    pub fn window(&self) -> Window {
        self.window
    }

    pub fn is_structural_zero(&self) -> bool {
        self.structural_zero
    }

    pub fn components(&self) -> &[Vec<C64>] {
        &self.components
    }

    pub fn component_slice(&self, slot: usize) -> &[C64] {
        &self.components[slot]
    }

    pub fn into_components(self) -> Vec<Vec<C64>> {
        self.components
    }

    /// Coefficient `⟨basis element, form⟩` for the selected component.
    pub fn get(&self, component: Component, idx: GridIndex) -> Result<C64> {
        let slot = component.slot(self.degree)?;
        Ok(self.at(slot, idx))
    }

    /// Coefficient by storage slot; exactly zero outside the window.
    pub fn at(&self, slot: usize, idx: GridIndex) -> C64 {
        match self.window.offset(idx) {
            Some(off) => self.components[slot][off],
            None => C64::new(0.0, 0.0),
        }
    }

    /// Copy onto another window, cropping or zero-padding as needed.
    pub fn on_window(&self, window: Window) -> Self {
        if window == self.window {
            return self.clone();
        }
        let components = self
            .components
            .iter()
            .enumerate()
            .map(|(slot, _)| window.sites().map(|idx| self.at(slot, idx)).collect())
            .collect();
        Self { degree: self.degree, window, components, structural_zero: self.structural_zero }
    }

    /// Bounding window of both forms' windows.
    pub fn joint_window(&self, other: &Cochain) -> Window {
        self.window.max(other.window)
    }

    fn check_degree(&self, other: &Cochain) -> Result<()> {
        if self.degree != other.degree {
            return Err(CochainError::DegreeMismatch { left: self.degree, right: other.degree });
        }
        Ok(())
    }

    /// `a·self + b·other`, on the joint window. Structural zeros drop out.
    pub fn linear_combination(&self, a: C64, other: &Cochain, b: C64) -> Result<Cochain> {
        self.check_degree(other)?;
        let window = self.joint_window(other);
        let components = (0..self.degree.component_count())
            .map(|slot| window.sites().map(|idx| a * self.at(slot, idx) + b * other.at(slot, idx)).collect())
            .collect();
        Ok(Self {
            degree: self.degree,
            window,
            components,
            structural_zero: self.structural_zero && other.structural_zero,
        })
    }

    pub fn add(&self, other: &Cochain) -> Result<Cochain> {
        self.linear_combination(C64::new(1.0, 0.0), other, C64::new(1.0, 0.0))
    }

    pub fn sub(&self, other: &Cochain) -> Result<Cochain> {
        self.linear_combination(C64::new(1.0, 0.0), other, C64::new(-1.0, 0.0))
    }

    pub fn scale(&self, a: C64) -> Cochain {
        let mut out = self.clone();
        out.components.iter_mut().flatten().for_each(|z| *z *= a);
        out
    }

    /// `(self, other) = Σ self_{k,s} · conj(other_{k,s})`, summed over all
    /// components. Windows may differ.
    pub fn inner_product(&self, other: &Cochain) -> Result<C64> {
        self.inner_product_on(other, self.window.min(other.window))
    }

    /// The truncated product `(self, other)_N` over `window` only.
    pub fn inner_product_on(&self, other: &Cochain, window: Window) -> Result<C64> {
        self.check_degree(other)?;
        let mut acc = C64::new(0.0, 0.0);
        for slot in 0..self.degree.component_count() {
            for idx in window.sites() {
                acc += self.at(slot, idx) * other.at(slot, idx).conj();
            }
        }
        Ok(acc)
    }

    pub fn norm_sqr(&self) -> f64 {
        self.components.iter().flatten().map(|z| z.norm_sqr()).sum()
    }

    /// `‖a‖ = √(a, a)`.
    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().flatten().all(|z| *z == C64::new(0.0, 0.0))
    }

    pub fn max_abs(&self) -> f64 {
        self.components.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest coefficient-wise difference over the joint window, with where
    /// it occurs.
    pub fn max_abs_diff(&self, other: &Cochain) -> Result<(f64, GridIndex, Component)> {
        self.check_degree(other)?;
        let window = self.joint_window(other);
        let mut worst = (0.0, GridIndex::ORIGIN, self.degree.components()[0]);
        for slot in 0..self.degree.component_count() {
            for idx in window.sites() {
                let d = (self.at(slot, idx) - other.at(slot, idx)).norm();
                if d > worst.0 {
                    worst = (d, idx, Component::from_slot(self.degree, slot));
                }
            }
        }
        Ok(worst)
    }

    /// Smallest window containing every nonzero coefficient.
    pub fn support_radius(&self) -> Option<usize> {
        let mut radius = None;
        for values in &self.components {
            for (off, z) in values.iter().enumerate() {
                if *z != C64::new(0.0, 0.0) {
                    let r = self.window.index_at(off).radius();
                    radius = Some(radius.map_or(r, |cur: usize| cur.max(r)));
                }
            }
        }
        radius
    }

    /// Sites carrying a nonzero coefficient in any component.
    pub fn support(&self) -> Vec<GridIndex> {
        self.window
            .sites()
            .enumerate()
            .filter(|(off, _)| self.components.iter().any(|c| c[*off] != C64::new(0.0, 0.0)))
            .map(|(_, idx)| idx)
            .collect()
    }
}

/// Build an `r`-form from an integer degree and a fill function.
pub fn make_cochain<F>(degree: i64, window: Window, fill: F) -> Result<Cochain>
where
    F: FnMut(Component, GridIndex) -> C64,
{
    Cochain::from_fn(Degree::from_int(degree)?, window, fill)
}
