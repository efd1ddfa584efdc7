//! Explicit descent maps on y^2 = x^d + g(t): phi_2, theta characteristics, the 5-isogeny descent,
//! Sigma_2 from component groups, and the even-degree negative test.

mod components;
mod maps;
mod remdescent;

pub use components::{sigma2, ComponentGroupTable, ComponentPlace, Sigma2Report};
pub use maps::{
    elliptic_base, explicit_five_torsion_section, five_descent, kt_poly_function, phi2, sum_on_curve, theta_equal, theta_map, Certificate,
    DescentImage, DescentReport, DescentSetting, KtDivisorPair, MapTag,
};
pub use remdescent::{remdescent_negative_test, EvenTheta, RemdescentReport, RemdescentSummary, RemdescentWitness};

#[cfg(test)]
mod tests;
