use proptest::prelude::*;
use sinet::edgelist::{read_edge_list, write_edge_list};
use sinet::output::{read_rows, write_rows, TrajectoryRow};
use sinet_core::netgen::{generate, GenMode};

fn mode() -> impl Strategy<Value = GenMode> {
    prop_oneof![
        (0.0..=1.0f64).prop_map(GenMode::Gnp),
        (0usize..40).prop_map(GenMode::Gnl)
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn edge_list_round_trips(n in 10usize..60, mode in mode(), seed in any::<u64>()) {
        let net = generate(n, mode, seed).unwrap();
        let mut buf = Vec::new();
        write_edge_list(&net, &mut buf).unwrap();
        let back = read_edge_list(buf.as_slice()).unwrap();
        prop_assert!(back == net);
    }

    #[test]
    fn trajectory_csv_round_trips(zs in proptest::collection::vec(0usize..1000, 0..50)) {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("t.csv");
        let rows: Vec<TrajectoryRow> = zs.iter().enumerate().map(|(t, &z)| TrajectoryRow { t, z }).collect();
        write_rows(&path, &rows).unwrap();
        let back: Vec<TrajectoryRow> = read_rows(&path).unwrap();
        prop_assert_eq!(back, rows);
    }
}
