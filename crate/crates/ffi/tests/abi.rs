use std::ffi::{CStr, CString};
use std::ptr;

use diffnet_ffi::*;

fn last_error() -> String {
    let p = dn_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn from_text(text: &str) -> *mut DnNetwork {
    let c = CString::new(text).unwrap();
    let mut h = ptr::null_mut();
    assert_eq!(unsafe { dn_network_from_edge_list(c.as_ptr(), &mut h) }, DnStatus::Ok);
    h
}

#[test]
fn features_of_a_three_cycle() {
    let h = from_text("a\tb\nb\tc\nc\ta\n");
    unsafe {
        assert_eq!((dn_network_node_count(h), dn_network_edge_count(h)), (3, 3));
        let mut f = [0.0; DN_FEATURE_COUNT];
        assert_eq!(dn_features(h, f.as_mut_ptr()), DnStatus::Ok);
        assert_eq!(f, [1.0, 3.0, 1.0, 3.0, 1.0, 1.0, 2.0]);

        let mut counts = vec![0u64; 3 * DN_ORBIT_COUNT];
        assert_eq!(dn_orbit_counts(h, counts.as_mut_ptr(), counts.len()), DnStatus::Ok);
        for row in counts.chunks(DN_ORBIT_COUNT) {
            assert_eq!(row[12], 1);
        }
        assert_eq!(dn_orbit_counts(h, counts.as_mut_ptr(), 5), DnStatus::BufferTooSmall);
        assert!(last_error().contains("need 39"));
        dn_network_free(h);
    }
}

#[test]
fn distances_between_handles() {
    let src = [0u32, 1];
    let dst = [1u32, 2];
    let mut path = ptr::null_mut();
    let cycle = from_text("x y\ny z\nz x\n");
    unsafe {
        assert_eq!(dn_network_from_edges(3, src.as_ptr(), dst.as_ptr(), 2, &mut path), DnStatus::Ok);
        let (mut d, mut self_d, mut pd) = (f64::NAN, f64::NAN, f64::NAN);
        assert_eq!(dn_dgcd13(path, cycle, &mut d), DnStatus::Ok);
        assert_eq!(dn_dgcd13(path, path, &mut self_d), DnStatus::Ok);
        assert_eq!(dn_portrait_divergence(path, cycle, 0, &mut pd), DnStatus::Ok);
        assert!(d > 0.0 && self_d == 0.0);
        assert!(pd > 0.0 && pd <= 1.0);
        dn_network_free(path);
        dn_network_free(cycle);
    }
}

#[test]
fn errors_carry_codes_and_messages() {
    let mut h = ptr::null_mut();
    unsafe {
        assert_eq!(
            dn_network_from_edges(2, [0u32].as_ptr(), [5u32].as_ptr(), 1, &mut h),
            DnStatus::InvalidArgument
        );
        assert!(last_error().contains("outside 0..2"));
        assert_eq!(
            dn_network_from_edges(2, [1u32].as_ptr(), [1u32].as_ptr(), 1, &mut h),
            DnStatus::InvalidArgument
        );
        assert_eq!(dn_network_from_edges(0, ptr::null(), ptr::null(), 0, &mut h), DnStatus::EmptyGraph);

        let bad = CString::new("a a\n").unwrap();
        assert_eq!(dn_network_from_edge_list(bad.as_ptr(), &mut h), DnStatus::Parse);
        assert!(last_error().contains(":1: self-loop"), "{}", last_error());
        assert_eq!(dn_network_from_edge_list(ptr::null(), &mut h), DnStatus::NullPointer);

        let missing = CString::new("/nonexistent/net.edges").unwrap();
        assert_eq!(dn_network_load(missing.as_ptr(), &mut h), DnStatus::Io);

        let empty = from_text("# nothing\n");
        let mut f = [0.0; DN_FEATURE_COUNT];
        assert_eq!(dn_features(empty, f.as_mut_ptr()), DnStatus::EmptyGraph);
        dn_network_free(empty);
        assert_eq!(dn_features(ptr::null(), f.as_mut_ptr()), DnStatus::NullPointer);

        // A successful call clears the previous message.
        let ok = from_text("a b\n");
        assert!(dn_last_error().is_null());
        dn_network_free(ok);
        dn_network_free(ptr::null_mut());
    }
}

#[test]
fn statistics_entry_points() {
    let (mut auc, mut d, mut p) = (0.0, 0.0, 0.0);
    unsafe {
        assert_eq!(
            dn_roc_auc([0.1, 0.4, 0.35, 0.8].as_ptr(), [0u8, 0, 1, 1].as_ptr(), 4, &mut auc),
            DnStatus::Ok
        );
        assert_eq!(auc, 0.75);
        assert_eq!(
            dn_roc_auc([0.1, 0.2].as_ptr(), [1u8, 1].as_ptr(), 2, &mut auc),
            DnStatus::InvalidArgument
        );
        let (x, y) = ([1.0, 2.0, 3.0, 4.0], [3.0, 4.0, 5.0, 6.0]);
        assert_eq!(dn_ks_two_sample(x.as_ptr(), 4, y.as_ptr(), 4, &mut d, &mut p), DnStatus::Ok);
        assert_eq!(d, 0.5);
        assert!(p > 0.05 && p <= 1.0);
        assert_eq!(dn_ks_two_sample(x.as_ptr(), 0, y.as_ptr(), 4, &mut d, &mut p), DnStatus::EmptyGraph);
        assert_eq!(CStr::from_ptr(dn_version()).to_str().unwrap(), env!("CARGO_PKG_VERSION"));
    }
}
