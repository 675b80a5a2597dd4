//! Binned color scale for vertex colorings.

use core::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Rgb(pub u8, pub u8, pub u8);

impl fmt::Display for Rgb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{:02x}{:02x}{:02x}", self.0, self.1, self.2)
    }
}

impl Rgb {
    /// Rec. 709 relative luminance on the gamma-encoded channels.
    pub fn luma(self) -> f64 {
        0.2126 * self.0 as f64 + 0.7152 * self.1 as f64 + 0.0722 * self.2 as f64
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Palette {
    /// Dark purple through teal to yellow; luminance rises monotonically.
    #[default]
    Viridis,
    /// Blue, cyan, yellow, red.
    Jet,
    /// Light to dark grey.
    Greys,
}

const VIRIDIS: &[Rgb] = &[
    Rgb(0x44, 0x01, 0x54),
    Rgb(0x48, 0x28, 0x78),
    Rgb(0x3e, 0x49, 0x89),
    Rgb(0x31, 0x68, 0x8e),
    Rgb(0x26, 0x82, 0x8e),
    Rgb(0x1f, 0x9e, 0x89),
    Rgb(0x35, 0xb7, 0x79),
    Rgb(0x6e, 0xce, 0x58),
    Rgb(0xb5, 0xde, 0x2b),
    Rgb(0xfd, 0xe7, 0x25),
];
const JET: &[Rgb] = &[
    Rgb(0x00, 0x00, 0xff),
    Rgb(0x00, 0xff, 0xff),
    Rgb(0xff, 0xff, 0x00),
    Rgb(0xff, 0x00, 0x00),
];
const GREYS: &[Rgb] = &[Rgb(0xf0, 0xf0, 0xf0), Rgb(0x25, 0x25, 0x25)];

impl Palette {
    pub fn name(self) -> &'static str {
        match self {
            Palette::Viridis => "viridis",
            Palette::Jet => "jet",
            Palette::Greys => "greys",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "viridis" => Some(Palette::Viridis),
            "jet" => Some(Palette::Jet),
            "greys" | "grays" => Some(Palette::Greys),
            _ => None,
        }
    }

    fn anchors(self) -> &'static [Rgb] {
        match self {
            Palette::Viridis => VIRIDIS,
            Palette::Jet => JET,
            Palette::Greys => GREYS,
        }
    }

    /// Color of 1-based `bin` out of `n_colors`, sampled evenly along the ramp.
    pub fn color(self, bin: usize, n_colors: usize) -> Rgb {
        let anchors = self.anchors();
        let t = if n_colors <= 1 {
            0.5
        } else {
            (bin.clamp(1, n_colors) - 1) as f64 / (n_colors - 1) as f64
        };
        let x = t * (anchors.len() - 1) as f64;
        let i = (libm::floor(x) as usize).min(anchors.len() - 2);
        let f = x - i as f64;
        let (a, b) = (anchors[i], anchors[i + 1]);
        let mix = |p: u8, q: u8| libm::round(p as f64 + (q as f64 - p as f64) * f) as u8;
        Rgb(mix(a.0, b.0), mix(a.1, b.1), mix(a.2, b.2))
    }
}

/// 1-based bin of `value` among `n_colors` equal-width bins over `[lo, hi]`.
///
/// Values are clamped into the range first. Bins are closed on the left and
/// the last bin also takes `hi`, so `lo` lands in bin 1, `hi` in bin
/// `n_colors`, and the midpoint of two bins in bin 2. A degenerate range
/// (`lo == hi`) puts everything in the middle bin, `ceil(n_colors / 2)`.
pub fn color_bin(value: f64, lo: f64, hi: f64, n_colors: usize) -> usize {
    let n = n_colors.max(1);
    if hi.partial_cmp(&lo) != Some(core::cmp::Ordering::Greater) {
        return n.div_ceil(2);
    }
    let v = value.clamp(lo, hi);
    let t = (v - lo) / (hi - lo);
    let bin = libm::floor(t * n as f64) as usize + 1;
    bin.min(n)
}

pub fn color_of(value: f64, range: (f64, f64), n_colors: usize, palette: Palette) -> Rgb {
    palette.color(color_bin(value, range.0, range.1, n_colors), n_colors)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use proptest::prelude::*;

    #[test]
    fn endpoints_and_midpoint() {
        for p in [Palette::Viridis, Palette::Jet, Palette::Greys] {
            assert_eq!(color_of(0.0, (0.0, 1.0), 100, p), p.color(1, 100));
            assert_eq!(color_of(1.0, (0.0, 1.0), 100, p), p.color(100, 100));
        }
        assert_eq!(color_of(0.0, (0.0, 1.0), 100, Palette::Viridis).to_string(), "#440154");
        assert_eq!(color_of(1.0, (0.0, 1.0), 100, Palette::Viridis).to_string(), "#fde725");
        // two bins over [0, 1]: [0, 0.5) and [0.5, 1]
        assert_eq!(color_bin(0.5, 0.0, 1.0, 2), 2);
        assert_eq!(color_bin(0.4999, 0.0, 1.0, 2), 1);
        assert_eq!(color_bin(-3.0, 0.0, 1.0, 10), 1);
        assert_eq!(color_bin(7.0, 0.0, 1.0, 10), 10);
    }

    #[test]
    fn constant_range_uses_middle_bin() {
        assert_eq!(color_bin(4.0, 4.0, 4.0, 100), 50);
        assert_eq!(color_bin(4.0, 4.0, 4.0, 3), 2);
    }

    #[test]
    fn palette_names_round_trip() {
        for p in [Palette::Viridis, Palette::Jet, Palette::Greys] {
            assert_eq!(Palette::from_name(p.name()), Some(p));
        }
        assert_eq!(Palette::from_name("rainbow"), None);
    }

    proptest! {
        #[test]
        fn bins_and_luma_are_monotone(
            a in -10.0f64..10.0, b in -10.0f64..10.0,
            lo in -5.0f64..0.0, width in 0.1f64..5.0, n in 2usize..200,
        ) {
            let hi = lo + width;
            let (x, y) = if a <= b { (a, b) } else { (b, a) };
            prop_assert!(color_bin(x, lo, hi, n) <= color_bin(y, lo, hi, n));
            let (cx, cy) = (color_of(x, (lo, hi), n, Palette::Greys), color_of(y, (lo, hi), n, Palette::Greys));
            prop_assert!(cx.luma() >= cy.luma());
            let (vx, vy) = (color_of(x, (lo, hi), n, Palette::Viridis), color_of(y, (lo, hi), n, Palette::Viridis));
            prop_assert!(vx.luma() <= vy.luma() + 1.0);
        }
    }
}
