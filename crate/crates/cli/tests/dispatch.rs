use rand::Rng;

use vulnkit::{generate, Oracle, WeightedGraph};
use vulnkit_cli::construct::{generate as build, two_colouring, Construction, SourceArgs};
use vulnkit_cli::solve::{kernelize, parse_id_list, pick_algorithm, resolve_budget, solve, verify};
use vulnkit_cli::{Algorithm, Budget, CliError, FileParams, Instance, Problem, Verdict};

fn interval_instance(seed: u64, n: usize, unit: bool) -> Instance {
    let mut rng = generate::rng(seed);
    let weights = if unit { 1..=1 } else { 1..=4 };
    let (graph, model) = generate::random_interval_instance(&mut rng, n, 14, 4, weights);
    Instance {
        graph,
        model: Some(model),
        params: FileParams::default(),
    }
}

fn p3() -> Instance {
    Instance::new(WeightedGraph::path(3))
}

#[test]
fn budget_resolution() {
    let file = FileParams {
        p: Some(3),
        k: Some(1),
        l: Some(2),
    };
    assert_eq!(
        resolve_budget(Problem::Wvi, None, None, None, file).unwrap(),
        Budget::Integrity { p: 3 }
    );
    assert_eq!(
        resolve_budget(Problem::Wvi, Some(5), None, None, file).unwrap(),
        Budget::Integrity { p: 5 }
    );
    assert_eq!(
        resolve_budget(Problem::Coc, None, Some(4), None, file).unwrap(),
        Budget::Order { k: 4, l: 2 }
    );
    let none = FileParams::default();
    for (problem, p, k, l) in [
        (Problem::Coc, Some(1), Some(1), Some(1)),
        (Problem::Vi, Some(1), Some(1), None),
        (Problem::Wvi, None, None, None),
        (Problem::Wcoc, None, Some(1), None),
    ] {
        let err = resolve_budget(problem, p, k, l, none).unwrap_err();
        assert_eq!(err.exit_code(), 2, "{problem} {err}");
    }
}

#[test]
fn p3_order_connectivity_witness() {
    let r = solve(&p3(), Problem::Wcoc, Algorithm::Branch, Budget::Order { k: 1, l: 1 }, &Oracle::default(), true).unwrap();
    assert_eq!(r.verdict, Verdict::Yes);
    assert_eq!(r.witness, Some(vec![2]));
    let o = r.objective.unwrap();
    assert_eq!((o.w_x, o.wcc), (1, 1));
}

#[test]
fn no_verdict_has_no_objective() {
    let k4 = Instance::new(WeightedGraph::complete(vec![1; 4]).unwrap());
    let r = solve(&k4, Problem::Vi, Algorithm::Branch, Budget::Integrity { p: 3 }, &Oracle::default(), true).unwrap();
    assert_eq!(r.verdict, Verdict::No);
    assert_eq!((r.witness, r.objective), (None, None));
}

#[test]
fn witness_is_only_reported_on_request() {
    let r = solve(&p3(), Problem::Wvi, Algorithm::Oracle, Budget::Integrity { p: 2 }, &Oracle::default(), false).unwrap();
    assert_eq!(r.verdict, Verdict::Yes);
    assert_eq!(r.witness, None);
    assert!(r.objective.is_some());
}

#[test]
fn auto_selection() {
    let k3 = Instance::new(WeightedGraph::complete(vec![1, 2, 3]).unwrap());
    assert_eq!(pick_algorithm(&k3, Problem::Wvi), Algorithm::Complete);
    let star = Instance::new(WeightedGraph::star(3));
    assert_eq!(pick_algorithm(&star, Problem::Vi), Algorithm::Split);
    assert_eq!(pick_algorithm(&star, Problem::Coc), Algorithm::KernelBranch);
    let interval = Instance {
        model: Some(vulnkit::interval::IntervalModel::new(vec![(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap()),
        ..Instance::new(WeightedGraph::path(4))
    };
    // P4 is split, so the split rule wins for vi
    assert_eq!(pick_algorithm(&interval, Problem::Vi), Algorithm::Split);
    assert_eq!(pick_algorithm(&interval, Problem::Wvi), Algorithm::Interval);
    let c5 = Instance::new(WeightedGraph::cycle(5));
    assert_eq!(pick_algorithm(&c5, Problem::Vi), Algorithm::KernelBranch);
}

#[test]
fn preconditions_are_solver_errors() {
    let oracle = Oracle::default();
    let weighted = Instance::new(WeightedGraph::new(vec![1, 2], [(0, 1)]).unwrap());
    let c4 = Instance::new(WeightedGraph::cycle(4));
    let cases: Vec<(Instance, Problem, Algorithm, Budget)> = vec![
        (weighted, Problem::Vi, Algorithm::Branch, Budget::Integrity { p: 2 }),
        (c4.clone(), Problem::Vi, Algorithm::Split, Budget::Integrity { p: 2 }),
        (c4.clone(), Problem::Wvi, Algorithm::Split, Budget::Integrity { p: 2 }),
        (c4.clone(), Problem::Wcoc, Algorithm::Complete, Budget::Order { k: 1, l: 1 }),
        (c4.clone(), Problem::Wcoc, Algorithm::Interval, Budget::Order { k: 1, l: 1 }),
        (c4, Problem::Wvi, Algorithm::Oracle, Budget::Integrity { p: 2 }),
    ];
    for (i, (inst, problem, algo, budget)) in cases.into_iter().enumerate() {
        let o = if i == 5 { Oracle::new(3) } else { oracle };
        let err = solve(&inst, problem, algo, budget, &o, false).unwrap_err();
        assert!(matches!(err, CliError::Solver(_)), "case {i}: {err}");
        assert_eq!(err.exit_code(), 3);
    }
}

#[test]
fn every_algorithm_agrees_with_the_oracle() {
    let oracle = Oracle::default();
    for seed in 0..150u64 {
        let mut rng = generate::rng(seed);
        let n = rng.gen_range(1..=9);
        let unit = seed % 3 == 0;
        let inst = interval_instance(seed, n, unit);
        for problem in [Problem::Vi, Problem::Wvi, Problem::Coc, Problem::Wcoc] {
            if problem.is_unit() && !unit {
                continue;
            }
            let budget = if problem.is_integrity() {
                Budget::Integrity { p: rng.gen_range(0..=8) }
            } else {
                Budget::Order {
                    k: rng.gen_range(0..=4),
                    l: rng.gen_range(0..=4),
                }
            };
            let expected = solve(&inst, problem, Algorithm::Oracle, budget, &oracle, true).unwrap().verdict;
            for algo in [Algorithm::Branch, Algorithm::KernelBranch, Algorithm::Interval, Algorithm::Auto] {
                let r = solve(&inst, problem, algo, budget, &oracle, true).unwrap();
                assert_eq!(r.verdict, expected, "seed {seed} {problem} {algo}");
                if let Some(w) = &r.witness {
                    let (check, reason) = verify(&inst, problem, budget, w).unwrap();
                    assert_eq!(check.verdict, Verdict::Yes, "seed {seed} {problem} {algo}: {reason:?}");
                }
            }
        }
    }
}

#[test]
fn verify_reports_rejections() {
    let (r, reason) = verify(&p3(), Problem::Wvi, Budget::Integrity { p: 2 }, &[2]).unwrap();
    assert_eq!(r.verdict, Verdict::Yes);
    assert_eq!(r.objective.map(|o| o.w_x + o.wcc), Some(2));
    assert!(reason.is_none());
    let (r, reason) = verify(&p3(), Problem::Wcoc, Budget::Order { k: 0, l: 1 }, &[2]).unwrap();
    assert_eq!(r.verdict, Verdict::No);
    assert!(reason.unwrap().contains("w(X)"));
    assert_eq!(verify(&p3(), Problem::Wvi, Budget::Integrity { p: 2 }, &[4]).unwrap_err().exit_code(), 2);
}

#[test]
fn id_lists() {
    assert_eq!(parse_id_list("1,3, 4  7").unwrap(), vec![1, 3, 4, 7]);
    assert_eq!(parse_id_list("").unwrap(), Vec::<usize>::new());
    assert!(parse_id_list("0").is_err());
    assert!(parse_id_list("a").is_err());
}

#[test]
fn kernel_is_equivalent() {
    let oracle = Oracle::default();
    for seed in 0..120u64 {
        let mut rng = generate::rng(500 + seed);
        let n = rng.gen_range(1..=10);
        let unit = seed % 2 == 0;
        let inst = interval_instance(500 + seed, n, unit);
        let (problem, budget) = if seed % 4 < 2 {
            (Problem::Wvi, Budget::Integrity { p: rng.gen_range(0..=6) })
        } else {
            (
                Problem::Wcoc,
                Budget::Order {
                    k: rng.gen_range(0..=4),
                    l: rng.gen_range(0..=4),
                },
            )
        };
        let expected = solve(&inst, problem, Algorithm::Oracle, budget, &oracle, false).unwrap().verdict;
        let report = kernelize(&inst, problem, budget).unwrap();
        match (report.verdict, report.kernel) {
            (Some(v), None) => assert_eq!(v, expected, "seed {seed}"),
            (None, Some(kernel)) => {
                let kb = vulnkit_cli::solve::resolve_budget(problem, None, None, None, kernel.params).unwrap();
                let got = solve(&kernel, problem, Algorithm::Oracle, kb, &oracle, false).unwrap().verdict;
                assert_eq!(got, expected, "seed {seed}");
                // the restricted model still describes the kernel
                let got = solve(&kernel, problem, Algorithm::Interval, kb, &oracle, false).unwrap().verdict;
                assert_eq!(got, expected, "seed {seed}");
            }
            other => panic!("inconsistent report {other:?}"),
        }
    }
}

#[test]
fn constructions_preserve_answers() {
    let oracle = Oracle::default();
    let triangle_plus = WeightedGraph::unit(4, [(0, 1), (1, 2), (0, 2), (2, 3)]).unwrap();
    for (k, has) in [(2, true), (3, true)] {
        for construction in [Construction::CliqueCocSplit, Construction::CliqueWviSplit, Construction::CliqueViChordal, Construction::CliqueCocEll] {
            let args = SourceArgs {
                graph: Some(triangle_plus.clone()),
                k: Some(k),
                ..SourceArgs::default()
            };
            let (inst, comments) = build(construction, args).unwrap();
            assert!(comments[0].starts_with("construction "));
            if inst.graph.len() > 16 {
                continue;
            }
            let problem = if inst.params.p.is_some() { Problem::Wvi } else { Problem::Wcoc };
            let budget = resolve_budget(problem, None, None, None, inst.params).unwrap();
            let r = solve(&inst, problem, Algorithm::Oracle, budget, &oracle, false).unwrap();
            assert_eq!(r.verdict == Verdict::Yes, has, "{construction:?} k={k}");
        }
    }

    let (inst, comments) = build(
        Construction::PartitionComplete,
        SourceArgs {
            values: Some(vec![1, 2, 3]),
            ..SourceArgs::default()
        },
    )
    .unwrap();
    assert_eq!(inst.graph, WeightedGraph::complete(vec![1, 2, 3]).unwrap());
    assert_eq!((inst.params.k, inst.params.l), (Some(3), Some(3)));
    assert!(comments.contains(&"params k=3 l=3".to_string()));

    let c4 = WeightedGraph::cycle(4);
    assert_eq!(two_colouring(&c4), Some(vec![0, 2]));
    assert_eq!(two_colouring(&WeightedGraph::cycle(5)), None);
    let (inst, _) = build(
        Construction::BcbsCobipartite,
        SourceArgs {
            graph: Some(c4),
            k: Some(2),
            ..SourceArgs::default()
        },
    )
    .unwrap();
    let r = solve(&inst, Problem::Vi, Algorithm::Oracle, Budget::Integrity { p: inst.params.p.unwrap() }, &oracle, false).unwrap();
    assert_eq!(r.verdict, Verdict::Yes);

    let err = build(Construction::CliqueCocSplit, SourceArgs::default()).unwrap_err();
    assert_eq!(err.exit_code(), 2);
    let err = build(
        Construction::PartitionComplete,
        SourceArgs {
            values: Some(vec![1, 2]),
            ..SourceArgs::default()
        },
    )
    .unwrap_err();
    assert_eq!(err.exit_code(), 3);
}
