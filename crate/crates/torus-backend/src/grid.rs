//! Grid-sampled differential forms with their quasi-periodicity descriptor.

use num_complex::Complex64;

use crate::geometry::FlatCharacter;

/// Which coefficient the samples carry.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FormKind {
    /// a function (0,0)
    Function,
    /// coefficient of dzbar
    Form01,
    /// coefficient of dz
    Form10,
    /// coefficient of dz wedge dzbar
    Form11,
}

/// N x N samples (row-major, x fastest) of a form valued in L^{l_power}
/// twisted by a flat character. Scalar untwisted forms (l_power = 0, trivial
/// chi) are honestly periodic; everything else obeys the automorphy law of
/// its descriptor, which only matters across the cut.
#[derive(Debug, Clone)]
pub struct GridForm {
    pub kind: FormKind,
    pub l_power: i64,
    pub chi: FlatCharacter,
    pub samples: Vec<Complex64>,
}

impl GridForm {
    pub fn scalar(kind: FormKind, samples: Vec<Complex64>) -> Self {
        Self {
            kind,
            l_power: 0,
            chi: FlatCharacter::trivial(),
            samples,
        }
    }

    pub fn is_scalar_periodic(&self) -> bool {
        self.l_power == 0 && self.chi.is_trivial()
    }
}
