use monadforge::frame::{a_of_gamma, lift_from_net, misp_verify};
use monadforge::linalg::{int, DEFAULT_PRIME};
use monadforge::net::{barth_verify, line_splitting, presentation};
use monadforge::par::Execution;
use monadforge::plane::{fiber_report, mx_verify, phi_restrict, plane_net, psi_project};
use monadforge::report::{VerifyMode, VerifyOptions};
use monadforge::slice::{gamma_of_octuple, net_of_octuple};
use monadforge::workbench::{gen_null_correlation, search_gamma_points, Ansatz, SearchConfig};

fn point(v: [i64; 4]) -> Vec<monadforge::linalg::Rat> {
    v.iter().map(|&x| int(x)).collect()
}

#[test]
fn null_correlation_lifts_to_a_framed_point() {
    let net = gen_null_correlation();
    let p = presentation(&net).unwrap();
    let gamma = lift_from_net(&p).unwrap();
    assert_eq!(a_of_gamma(&gamma), net.flatten());
    assert!(misp_verify(&gamma, &VerifyOptions::exact()).all_pass());
}

#[test]
fn null_correlation_jumps_on_isotropic_lines() {
    let p = presentation(&gen_null_correlation()).unwrap();
    let generic = line_splitting(&p, &point([1, 0, 0, 0]), &point([0, 1, 0, 0])).unwrap();
    assert_eq!(generic.d, 0);
    assert!(generic.consistent());
    let jumping = line_splitting(&p, &point([1, 0, 0, 0]), &point([0, 0, 1, 0])).unwrap();
    assert_eq!(jumping.d, 1);
    assert!(jumping.consistent());
}

#[test]
fn search_hits_pass_every_route() {
    let cfg = SearchConfig { n: 2, seed: 11, trials: 8, ansatz: Ansatz::Dense, mode: VerifyMode::Exact, prime: DEFAULT_PRIME, exec: Execution::Parallel };
    let out = search_gamma_points(&cfg).unwrap();
    assert!(!out.hits.is_empty());
    let opts = VerifyOptions::exact();
    for hit in &out.hits {
        let o = hit.octuple.to_octuple().unwrap();
        assert!(hit.report.all_pass());
        assert!(misp_verify(&gamma_of_octuple(&o), &opts).all_pass());
        let net = net_of_octuple(&o).unwrap();
        assert!(barth_verify(&net, &opts).all_pass());
        let sigma = psi_project(&o).unwrap();
        let pnet = plane_net(&sigma);
        assert_eq!(phi_restrict(&net).unwrap(), pnet);
        let plane = mx_verify(&pnet, &opts).unwrap();
        assert_eq!(plane.entries.len(), 3);
        let fiber = fiber_report(&sigma, Some(&o), 2, 0, Some(&opts)).unwrap();
        assert_eq!(fiber.source_member, Some(true));
        assert_eq!(fiber.closed_pass, 2);
    }
}
