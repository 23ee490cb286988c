//! Error budget and main-term asymptotics of the weighted spectral count:
//! the parameters `m_ρ`, `β_ε`, `U(C)`, `ε(C)`, the four-piece error term
//! `E(C, U, ε)`, the main term `(2√|D_F|/(2π)^d)·ν̃pl`, published
//! leading terms of special families, checks of the theorem hypotheses,
//! the Eisenstein-coefficient bound, and synthetic spectra for exercising
//! the counting pipeline.

mod budget;
mod conditions;
mod families;
mod params;
mod sets;
mod synthetic;

pub use budget::{
    auto_budget, beta_eps, eisenstein_bound, error_budget, ln_m_rho, m_rho, main_term, main_term_constant, main_term_lambda,
    BudgetPiece, ErrorBudget,
};
pub use conditions::{check_thm_conditions, is_discrete_eigenvalue, ConditionCheck, ConditionFamily, ConditionReport};
pub use families::{family_asymptotic_table, fit_power_law, AsymptoticFamily, FamilyRow, FamilyTable, PublishedTarget};
pub use params::{
    admissibility_threshold, check_window, choose_eps, choose_u, select_parameters, shell_exponent, AnalysisParams,
    ParameterChoice, A1,
};
pub use sets::{BudgetSet, LogBox, LogPlace, SetMeasures};
pub use synthetic::{synth_spectrum, SyntheticPoint, SyntheticSpectrum, WeightLaw};
