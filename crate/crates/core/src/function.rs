use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec::Vec;

use num_complex::Complex64;

/// A real function on (0, ∞) with an optional analytic derivative and an
/// optional complex extension. Non-finite values signal evaluation failure.
pub trait ScalarFunction: Send + Sync {
    fn value(&self, x: f64) -> f64;

    fn derivative(&self, _x: f64) -> Option<f64> {
        None
    }

    fn complex(&self, _z: Complex64) -> Option<Complex64> {
        None
    }

    /// Values along an ordered path, continued analytically from the first
    /// node. Only multivalued functions such as non-integer powers need to
    /// override the pointwise default.
    fn complex_path(&self, path: &[Complex64]) -> Option<Vec<Complex64>> {
        path.iter().map(|&z| self.complex(z)).collect()
    }
}

impl<T: ScalarFunction + ?Sized> ScalarFunction for &T {
    fn value(&self, x: f64) -> f64 {
        (**self).value(x)
    }
    fn derivative(&self, x: f64) -> Option<f64> {
        (**self).derivative(x)
    }
    fn complex(&self, z: Complex64) -> Option<Complex64> {
        (**self).complex(z)
    }
    fn complex_path(&self, path: &[Complex64]) -> Option<Vec<Complex64>> {
        (**self).complex_path(path)
    }
}

impl<T: ScalarFunction + ?Sized> ScalarFunction for Box<T> {
    fn value(&self, x: f64) -> f64 {
        (**self).value(x)
    }
    fn derivative(&self, x: f64) -> Option<f64> {
        (**self).derivative(x)
    }
    fn complex(&self, z: Complex64) -> Option<Complex64> {
        (**self).complex(z)
    }
    fn complex_path(&self, path: &[Complex64]) -> Option<Vec<Complex64>> {
        (**self).complex_path(path)
    }
}

type RealFn = Box<dyn Fn(f64) -> f64 + Send + Sync>;
type ComplexFn = Box<dyn Fn(Complex64) -> Complex64 + Send + Sync>;

/// Closure-backed [`ScalarFunction`].
pub struct FnScalar {
    name: String,
    f: RealFn,
    df: Option<RealFn>,
    fc: Option<ComplexFn>,
}

impl FnScalar {
    pub fn new(name: &str, f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        Self { name: name.into(), f: Box::new(f), df: None, fc: None }
    }

    pub fn with_derivative(mut self, df: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        self.df = Some(Box::new(df));
        self
    }

    pub fn with_complex(mut self, fc: impl Fn(Complex64) -> Complex64 + Send + Sync + 'static) -> Self {
        self.fc = Some(Box::new(fc));
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }
}

impl core::fmt::Debug for FnScalar {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("FnScalar")
            .field("name", &self.name)
            .field("derivative", &self.df.is_some())
            .field("complex", &self.fc.is_some())
            .finish()
    }
}

impl ScalarFunction for FnScalar {
    fn value(&self, x: f64) -> f64 {
        (self.f)(x)
    }
    fn derivative(&self, x: f64) -> Option<f64> {
        self.df.as_ref().map(|d| d(x))
    }
    fn complex(&self, z: Complex64) -> Option<Complex64> {
        self.fc.as_ref().map(|c| c(z))
    }
}
