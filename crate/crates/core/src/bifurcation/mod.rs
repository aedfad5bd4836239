//! Membership in the bifurcation set (the parameters in no matching interval) and
//! constructions of members.

mod digits;
mod generators;
mod membership;

pub use digits::{digit_predicate, DigitConstraint};
pub use generators::{
    extend_member, gamma_beta_eta, gen_rational_members, hat_c_embed, SeparatedMember,
    GENERATOR_BUDGET,
};
pub use membership::{
    in_e, in_e_all, in_e_reflected_talpha, in_e_via_gauss, in_e_via_talpha, in_e_via_tg,
    lemma_x_conditions, Membership, MembershipVerdict, MembershipWitness, Method, OrbitName,
    Termination,
};
