//! Maximal orders of imaginary quadratic fields: ideals in Hermite normal
//! form, prime splitting, principality, class numbers, radical generators
//! of primes and principal powers of ideals.

mod ideal;
mod order;

pub use ideal::{
    class_number, factor_prime, qr_power, reduced_forms, smith_x, PrimeAboveP, QuadIdeal, ReducedForm,
    SmithCertificate, Splitting,
};
pub use order::{QuadElem, QuadOrder};
