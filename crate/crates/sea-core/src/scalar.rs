//! Scalar math shim: `std` float intrinsics when available, `libm` otherwise.

#![allow(dead_code)]

macro_rules! shim {
    ($($name:ident => $libm:ident),* $(,)?) => {
        $(
            #[inline(always)]
            pub fn $name(x: f64) -> f64 {
                #[cfg(any(test, feature = "std"))]
                {
                    x.$name()
                }
                #[cfg(not(any(test, feature = "std")))]
                {
                    libm::$libm(x)
                }
            }
        )*
    };
}

shim! {
    sqrt => sqrt,
    cbrt => cbrt,
    ln => log,
    exp => exp,
    abs => fabs,
    tanh => tanh,
    sin => sin,
    cos => cos,
}

#[inline(always)]
pub fn hypot(a: f64, b: f64) -> f64 {
    #[cfg(any(test, feature = "std"))]
    {
        a.hypot(b)
    }
    #[cfg(not(any(test, feature = "std")))]
    {
        libm::hypot(a, b)
    }
}

#[inline(always)]
pub fn powf(a: f64, b: f64) -> f64 {
    #[cfg(any(test, feature = "std"))]
    {
        a.powf(b)
    }
    #[cfg(not(any(test, feature = "std")))]
    {
        libm::pow(a, b)
    }
}
