use super::*;
use crate::error::Error;
use crate::rank_bounds::BoundInput;

fn jac(op: JacobianOp, operands: &[(&str, &str)], n: Option<i64>) -> Scenario {
    let mut s = Scenario::default_jacobian();
    s.jacobian = Some(JacobianJob {
        operation: op,
        operands: operands.iter().map(|(a, b)| DivisorText { a: a.to_string(), b: b.to_string() }).collect(),
        n,
        count_degrees: None,
    });
    s
}

#[test]
fn jacobian_operations() {
    let r = cmd_jacobian(&jac(JacobianOp::Add, &[("1", "0"), ("1", "0")], None)).unwrap();
    assert_eq!(r.results["sum"], serde_json::json!({"a": "1", "b": "0"}));
    assert_eq!(r.exit_code(), 0);
    let r = cmd_jacobian(&jac(JacobianOp::Add, &[("1", "0"), ("x", "3")], None)).unwrap();
    assert_eq!(r.results["sum"], serde_json::json!({"a": "x", "b": "3"}));
    let r = cmd_jacobian(&jac(JacobianOp::CPolynomial, &[("x + 4", "0")], None)).unwrap();
    assert_eq!(r.results["c_polynomial"].as_str().unwrap().matches('x').count(), 1);
    assert!(!r.results["c_polynomial"].as_str().unwrap().contains('^'));
    let r = cmd_jacobian(&jac(JacobianOp::Mul, &[("x", "3")], Some(-7))).unwrap();
    assert_eq!(r.exit_code(), 0);
    assert_eq!(cmd_jacobian(&jac(JacobianOp::Enumerate, &[], None)).unwrap().results["group_order"], 50);
}

#[test]
fn jacobian_input_errors() {
    assert!(matches!(cmd_jacobian(&jac(JacobianOp::Add, &[("x", "3")], None)), Err(Error::InvalidInput(_))));
    assert!(matches!(cmd_jacobian(&jac(JacobianOp::Add, &[("x", "1"), ("1", "0")], None)), Err(Error::NotOnJacobian(_))));
    assert!(matches!(cmd_jacobian(&jac(JacobianOp::CPolynomial, &[("x +", "0")], None)), Err(Error::Parse { pos: 3, .. })));
    assert!(cmd_jacobian(&Scenario::default_d5()).is_err());
}

#[test]
fn bounds_and_pillai() {
    let r = cmd_rank_bound(&default_bound_input()).unwrap();
    assert_eq!(r.results["geometric_bound"]["value"], 8);
    assert_eq!(r.results["descent_bound"]["value"], 8);
    assert_eq!(r.exit_code(), 0);
    let over = BoundInput { known_rank: Some(9), ..default_bound_input() };
    assert_eq!(cmd_rank_bound(&over).unwrap().exit_code(), 1);
    let p = cmd_pillai();
    assert_eq!(p.checks.len(), 5);
    assert_eq!(p.exit_code(), 0);
    assert!(p.to_csv().starts_with("kind,id,status,expected,observed\ncheck,pillai-120-5,pass,"));
}

#[test]
fn jacobian_report_rechecks_and_is_deterministic() {
    let a = cmd_jacobian(&Scenario::default_jacobian()).unwrap();
    let b = cmd_jacobian(&Scenario::default_jacobian()).unwrap();
    assert_eq!(a.body_json(), b.body_json());
    let back: Report = serde_json::from_str(&a.to_json()).unwrap();
    assert_eq!(back, a);
    let checks = recheck(&back).unwrap();
    assert!(checks.iter().all(|c| c.status == Status::Pass));
}

#[test]
fn budget_makes_reports_inconclusive() {
    let mut s = Scenario::default_d6();
    s.budget = 10;
    let r = cmd_verify_d6(&s).unwrap();
    assert_eq!(r.exit_code(), 2);
    assert_eq!(r.check("section-search").unwrap().status, Status::Inconclusive);
}
