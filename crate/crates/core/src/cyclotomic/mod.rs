//! Cyclotomic fields and single-variable twisted Bernoulli numbers.

mod field;
mod twisted;

pub use field::{cyclo_arith, cyclotomic_polynomial, euler_phi, CycloElement, CycloOp, RootOfUnity};
pub use twisted::{
    frobenius_euler, frobenius_euler_table, negative_polylog, negative_polylog_rational, root_sum_closed_form,
    root_sum_twisted, twisted_bernoulli, twisted_bernoulli_table,
};
