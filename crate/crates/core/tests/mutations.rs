//! Mutation suite: one test per broken artefact.

mod common;

macro_rules! cases {
    ($($name:ident),* $(,)?) => {
        $(#[test]
        fn $name() {
            common::mutations::$name();
        })*
    };
}

cases!(
    eigenvariable_free_in_the_conclusion,
    eigenvariable_reused_in_the_existential,
    wrong_instantiation_term,
    axiom_with_different_sides,
    non_joinable_rewrite_step,
    rewrite_step_outside_lke,
    link_to_an_earlier_component,
    link_that_does_not_descend,
    cycle_before_basecase_closure,
    annotation_mismatch_at_stepcase_closure,
    rule_applied_to_a_closed_group,
    basecase_closure_with_a_wrong_pattern,
    call_to_an_unknown_group,
    lke_closure_with_an_open_stepcase,
    unary_arity_for_a_binary_rule,
    duplicate_pair_name,
    wrong_auxiliary_position_in_a_stepcase,
);
