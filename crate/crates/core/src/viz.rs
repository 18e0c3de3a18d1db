//! Square-grid pictures of `F_n`.
//!
//! Function `B` sits in cell `(i, j)` with `B = (i - 1) side + (j - 1)` and
//! `side = 2^(2^(n-1))`. Rows run downward, columns rightward.

use std::cmp::Ordering;
use std::fmt;
use std::fmt::Write as _;

use num_rational::Ratio;

use crate::bell::max_violation;
use crate::boolfn::{degree, table_from_index};
use crate::equivalence::classify;
use crate::spectral::{sweep, uncertainty};
use crate::{Error, Result, MAX_SWEEP_ARITY};

/// Violations are rounded to this many decimals so equal values share a color.
pub const VIOLATION_DECIMALS: i32 = 6;

/// A metric value held by one cell.
#[derive(Debug, Clone, Copy)]
pub enum CellValue {
    Int(i64),
    Ratio(Ratio<u64>),
    Real(f64),
}

impl CellValue {
    fn rank(&self) -> u8 {
        match self {
            CellValue::Int(_) => 0,
            CellValue::Ratio(_) => 1,
            CellValue::Real(_) => 2,
        }
    }
}

impl Ord for CellValue {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (CellValue::Int(a), CellValue::Int(b)) => a.cmp(b),
            (CellValue::Ratio(a), CellValue::Ratio(b)) => a.cmp(b),
            (CellValue::Real(a), CellValue::Real(b)) => a.total_cmp(b),
            _ => self.rank().cmp(&other.rank()),
        }
    }
}

impl PartialOrd for CellValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl PartialEq for CellValue {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for CellValue {}

impl fmt::Display for CellValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CellValue::Int(v) => write!(f, "{v}"),
            CellValue::Ratio(r) if *r.denom() == 1 => write!(f, "{}", r.numer()),
            CellValue::Ratio(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            CellValue::Real(v) => write!(f, "{:.*}", VIOLATION_DECIMALS as usize, v),
        }
    }
}

/// What a grid colors by.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Metric {
    Degree,
    Uncertainty,
    /// Class id under `G_n`, numbered by smallest member.
    Class,
    /// Maximal quantum violation, computed once per class.
    Violation,
}

impl Metric {
    pub fn name(&self) -> &'static str {
        match self {
            Metric::Degree => "degree",
            Metric::Uncertainty => "uncertainty",
            Metric::Class => "class",
            Metric::Violation => "violation",
        }
    }
}

impl std::str::FromStr for Metric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "degree" => Ok(Metric::Degree),
            "uncertainty" => Ok(Metric::Uncertainty),
            "class" => Ok(Metric::Class),
            "violation" => Ok(Metric::Violation),
            other => Err(Error::UnmappedValue(other.to_string())),
        }
    }
}

/// One metric value per function, laid out row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareGrid {
    n: usize,
    side: usize,
    cells: Vec<CellValue>,
}

impl SquareGrid {
    /// Wraps per-function values indexed by `B`.
    pub fn from_values(n: usize, cells: Vec<CellValue>) -> Result<Self> {
        check_grid_arity(n)?;
        let side = grid_side(n);
        if cells.len() != side * side {
            return Err(Error::LengthMismatch {
                expected: side * side,
                got: cells.len(),
            });
        }
        Ok(SquareGrid { n, side, cells })
    }

    pub fn arity(&self) -> usize {
        self.n
    }

    pub fn side(&self) -> usize {
        self.side
    }

    pub fn cells(&self) -> &[CellValue] {
        &self.cells
    }

    /// Value at 1-based `(i, j)`.
    pub fn get(&self, i: usize, j: usize) -> CellValue {
        self.cells[(i - 1) * self.side + (j - 1)]
    }

    pub fn value_of(&self, index: u64) -> CellValue {
        self.cells[index as usize]
    }

    /// Distinct values in ascending order with their multiplicities.
    pub fn histogram(&self) -> Vec<(CellValue, usize)> {
        let mut sorted = self.cells.clone();
        sorted.sort();
        let mut out: Vec<(CellValue, usize)> = Vec::new();
        for v in sorted {
            match out.last_mut() {
                Some((last, count)) if *last == v => *count += 1,
                _ => out.push((v, 1)),
            }
        }
        out
    }
}

fn grid_side(n: usize) -> usize {
    1usize << (1usize << n >> 1)
}

fn check_grid_arity(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::ArityTooSmall { n, min: 1 });
    }
    if n > MAX_SWEEP_ARITY {
        return Err(Error::ArityTooLarge {
            n,
            max: MAX_SWEEP_ARITY,
            what: "square grids",
        });
    }
    Ok(())
}

/// 1-based `(i, j)` of function `index`.
pub fn cell_of_function(n: usize, index: u64) -> Result<(usize, usize)> {
    check_grid_arity(n)?;
    let side = grid_side(n) as u64;
    if index >= side * side {
        return Err(Error::IndexOutOfRange { n, index });
    }
    Ok(((index / side) as usize + 1, (index % side) as usize + 1))
}

/// Evaluates `metric` over all of `F_n`.
pub fn render(n: usize, metric: Metric) -> Result<SquareGrid> {
    check_grid_arity(n)?;
    let cells = match metric {
        Metric::Degree => sweep(n, |t| CellValue::Int(i64::from(degree(&t))))?,
        Metric::Uncertainty => sweep(n, |t| CellValue::Ratio(uncertainty(&t)))?,
        Metric::Class => {
            let p = classify(n)?;
            (0..1u64 << (1 << n))
                .map(|b| CellValue::Int(p.class_of(b) as i64))
                .collect()
        }
        Metric::Violation => {
            let p = classify(n)?;
            let scale = 10f64.powi(VIOLATION_DECIMALS);
            let per_class = p
                .representatives()
                .iter()
                .map(|&r| {
                    Ok((max_violation(&table_from_index(n, r)?)?.value * scale).round() / scale)
                })
                .collect::<Result<Vec<f64>>>()?;
            (0..1u64 << (1 << n))
                .map(|b| CellValue::Real(per_class[p.class_of(b)]))
                .collect()
        }
    };
    SquareGrid::from_values(n, cells)
}

pub type Rgb = [u8; 3];

/// Named colors handed out to the smallest values, in order.
pub const ANCHOR_COLORS: [Rgb; 5] = [
    [255, 255, 255], // white
    [0, 160, 0],     // green
    [220, 0, 0],     // red
    [240, 220, 0],   // yellow
    [0, 0, 220],     // blue
];

/// Assignment of colors to metric values, ascending by value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColorMap {
    entries: Vec<(CellValue, Rgb)>,
}

impl ColorMap {
    /// Anchor colors first, then a golden-angle HSV ramp; every color is distinct.
    pub fn for_values(values: &[CellValue]) -> Self {
        let mut sorted = values.to_vec();
        sorted.sort();
        sorted.dedup();
        let mut entries: Vec<(CellValue, Rgb)> = Vec::with_capacity(sorted.len());
        for (k, v) in sorted.into_iter().enumerate() {
            let mut rgb = match ANCHOR_COLORS.get(k) {
                Some(&c) => c,
                None => ramp_color(k - ANCHOR_COLORS.len()),
            };
            while entries.iter().any(|e| e.1 == rgb) {
                rgb[2] = rgb[2].wrapping_add(1);
            }
            entries.push((v, rgb));
        }
        ColorMap { entries }
    }

    pub fn for_grid(g: &SquareGrid) -> Self {
        ColorMap::for_values(g.cells())
    }

    pub fn entries(&self) -> &[(CellValue, Rgb)] {
        &self.entries
    }

    pub fn color(&self, v: &CellValue) -> Result<Rgb> {
        self.entries
            .binary_search_by(|e| e.0.cmp(v))
            .map(|i| self.entries[i].1)
            .map_err(|_| Error::UnmappedValue(v.to_string()))
    }
}

fn ramp_color(m: usize) -> Rgb {
    let hue = (m as f64 * 137.507_764).rem_euclid(360.0);
    let value = if (m / 12).is_multiple_of(2) {
        0.85
    } else {
        0.6
    };
    hsv_to_rgb(hue, 0.7, value)
}

fn hsv_to_rgb(h: f64, s: f64, v: f64) -> Rgb {
    let c = v * s;
    let x = c * (1.0 - ((h / 60.0).rem_euclid(2.0) - 1.0).abs());
    let (r, g, b) = match (h / 60.0) as u32 {
        0 => (c, x, 0.0),
        1 => (x, c, 0.0),
        2 => (0.0, c, x),
        3 => (0.0, x, c),
        4 => (x, 0.0, c),
        _ => (c, 0.0, x),
    };
    let m = v - c;
    let to_byte = |t: f64| ((t + m) * 255.0).round() as u8;
    [to_byte(r), to_byte(g), to_byte(b)]
}

/// Binary PPM with each cell drawn as a `scale x scale` block.
pub fn write_ppm(g: &SquareGrid, colors: &ColorMap, scale: usize) -> Result<Vec<u8>> {
    if scale == 0 {
        return Err(Error::ValueOutOfRange {
            what: "scale",
            value: 0,
        });
    }
    let width = g.side * scale;
    let mut out = format!("P6\n{width} {width}\n255\n").into_bytes();
    out.reserve(width * width * 3);
    let mut row = Vec::with_capacity(width * 3);
    for i in 0..g.side {
        row.clear();
        for v in &g.cells[i * g.side..(i + 1) * g.side] {
            let rgb = colors.color(v)?;
            for _ in 0..scale {
                row.extend_from_slice(&rgb);
            }
        }
        for _ in 0..scale {
            out.extend_from_slice(&row);
        }
    }
    Ok(out)
}

/// `B,i,j,metric` rows.
pub fn grid_csv(g: &SquareGrid) -> String {
    let mut out = String::from("B,i,j,metric\n");
    for (b, v) in g.cells.iter().enumerate() {
        let _ = writeln!(out, "{},{},{},{}", b, b / g.side + 1, b % g.side + 1, v);
    }
    out
}

/// `value,r,g,b` rows in ascending value order.
pub fn legend_csv(colors: &ColorMap) -> String {
    let mut out = String::from("value,r,g,b\n");
    for (v, [r, g, b]) in &colors.entries {
        let _ = writeln!(out, "{v},{r},{g},{b}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equivalence::class_involution;

    #[test]
    fn cell_examples() {
        assert_eq!(cell_of_function(3, 0).unwrap(), (1, 1));
        assert_eq!(cell_of_function(2, 4).unwrap(), (2, 1));
        assert_eq!(cell_of_function(3, 255).unwrap(), (16, 16));
        assert!(cell_of_function(2, 16).is_err());
        assert!(cell_of_function(5, 0).is_err());
    }

    #[test]
    fn cells_cover_grid_once() {
        for n in 1..=3 {
            let side = grid_side(n);
            let mut seen = vec![false; side * side];
            for b in 0..(side * side) as u64 {
                let (i, j) = cell_of_function(n, b).unwrap();
                let k = (i - 1) * side + (j - 1);
                assert!(!seen[k]);
                seen[k] = true;
            }
        }
    }

    #[test]
    fn degree_grid_n2() {
        let g = render(2, Metric::Degree).unwrap();
        let h = g.histogram();
        assert_eq!(
            h,
            vec![
                (CellValue::Int(0), 2),
                (CellValue::Int(1), 6),
                (CellValue::Int(2), 8)
            ]
        );
        assert_eq!(g.get(1, 1), CellValue::Int(0));
        assert_eq!(g.get(4, 4), CellValue::Int(0));
    }

    #[test]
    fn uncertainty_grid_n2_is_white() {
        let g = render(2, Metric::Uncertainty).unwrap();
        assert_eq!(
            g.histogram(),
            vec![(CellValue::Ratio(Ratio::from_integer(1)), 16)]
        );
        let bytes = write_ppm(&g, &ColorMap::for_grid(&g), 1).unwrap();
        assert_eq!(&bytes[..11], b"P6\n4 4\n255\n");
        assert!(bytes[11..].iter().all(|&b| b == 255));
        assert_eq!(bytes.len(), 11 + 48);
    }

    #[test]
    fn class_grid_n3() {
        let g = render(3, Metric::Class).unwrap();
        let counts: Vec<usize> = g.histogram().into_iter().map(|e| e.1).collect();
        assert_eq!(counts, vec![16, 128, 48, 48, 16]);
        let legend = legend_csv(&ColorMap::for_grid(&g));
        assert_eq!(legend.lines().count(), 6);
    }

    #[test]
    fn single_cell_ppm() {
        let g = SquareGrid {
            n: 0,
            side: 1,
            cells: vec![CellValue::Int(0)],
        };
        let c = ColorMap::for_values(&[CellValue::Int(0)]);
        let bytes = write_ppm(&g, &c, 1).unwrap();
        assert_eq!(bytes, b"P6\n1 1\n255\n\xff\xff\xff");
        let scaled = write_ppm(&g, &c, 3).unwrap();
        assert_eq!(scaled.len(), "P6\n3 3\n255\n".len() + 27);
        assert!(write_ppm(&g, &c, 0).is_err());
    }

    #[test]
    fn unmapped_value_is_an_error() {
        let g = render(1, Metric::Degree).unwrap();
        let c = ColorMap::for_values(&[CellValue::Int(0)]);
        assert!(matches!(write_ppm(&g, &c, 1), Err(Error::UnmappedValue(_))));
    }

    #[test]
    fn palette_is_distinct_for_many_values() {
        let values: Vec<CellValue> = (0..300).map(CellValue::Int).collect();
        let c = ColorMap::for_values(&values);
        let mut colors: Vec<Rgb> = c.entries().iter().map(|e| e.1).collect();
        colors.sort();
        colors.dedup();
        assert_eq!(colors.len(), 300);
        assert_eq!(c.color(&CellValue::Int(0)).unwrap(), [255, 255, 255]);
    }

    #[test]
    fn csv_layout() {
        let g = render(1, Metric::Degree).unwrap();
        assert_eq!(
            grid_csv(&g),
            "B,i,j,metric\n0,1,1,0\n1,1,2,1\n2,2,1,1\n3,2,2,0\n"
        );
    }

    #[test]
    fn violation_grid_n2() {
        let g = render(2, Metric::Violation).unwrap();
        let h = g.histogram();
        assert_eq!(h.len(), 2);
        assert_eq!(h[0], (CellValue::Real(1.0), 8));
        assert_eq!(
            h[1],
            (CellValue::Real((2f64.sqrt() * 1e6).round() / 1e6), 8)
        );
    }

    #[test]
    fn involution_swaps_trivial_and_mermin_n4() {
        let g = render(4, Metric::Class).unwrap();
        let p = classify(4).unwrap();
        let s = class_involution(&p);
        let trivial = p.class_of(0);
        assert_ne!(s[trivial], trivial);
        assert_eq!(s[s[trivial]], trivial);
        assert_eq!(g.histogram().len(), 39);
    }

    #[test]
    fn ppm_is_deterministic() {
        let g = render(3, Metric::Degree).unwrap();
        let c = ColorMap::for_grid(&g);
        assert_eq!(write_ppm(&g, &c, 2).unwrap(), write_ppm(&g, &c, 2).unwrap());
    }
}
