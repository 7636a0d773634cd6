//! Graded linear algebra on `(C^{M|N})^{⊗n}`: the operators `P`, `Q`, `I`,
//! `J`, the R-matrices, symmetrizers, supertraces, evaluation
//! representations of the Yangian, and mixed operators with Yangian
//! coefficients.

pub mod checks;
mod eval;
mod mixed;
mod named;
mod operator;

pub use eval::{eval_generator, eval_rep, image_kernel_element, image_rank, multi_eval_rep, multi_eval_via_coproduct, Representation};
pub use mixed::{constant_times_bi, BiMatrix, MixedOperator};
pub use named::{p_at, perm_p, permutation_operator, projectors_ij, q_at, q_op, symmetrizer, EndoSeries, SymRoute};
pub use operator::{MultiIndex, Operator, MAX_BASIS};
