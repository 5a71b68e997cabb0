//! Exercises the C ABI through raw pointers, the way a foreign binding
//! would: handle lifecycles, status codes, out-parameters and error
//! messages.

use std::ffi::{CStr, CString};
use std::ptr;

use situ_capi::*;

fn c(text: &str) -> CString {
    CString::new(text).unwrap()
}

unsafe fn parse_type_ok(text: &str) -> *mut SituType {
    let mut out = ptr::null_mut();
    assert_eq!(situ_type_parse(c(text).as_ptr(), &mut out), SituStatus::Ok);
    assert!(!out.is_null());
    out
}

unsafe fn parse_process_ok(text: &str) -> *mut SituProcess {
    let mut out = ptr::null_mut();
    assert_eq!(situ_process_parse(c(text).as_ptr(), &mut out), SituStatus::Ok);
    assert!(!out.is_null());
    out
}

unsafe fn take_string(raw: *mut std::ffi::c_char) -> String {
    assert!(!raw.is_null());
    let text = CStr::from_ptr(raw).to_str().unwrap().to_owned();
    situ_string_free(raw);
    text
}

#[test]
fn parse_render_free_round_trip() {
    unsafe {
        let t = parse_type_ok("!a.end   &  !b.end");
        let mut rendered = ptr::null_mut();
        assert_eq!(situ_type_render(t, &mut rendered), SituStatus::Ok);
        assert_eq!(take_string(rendered), "!a.end & !b.end");
        situ_type_free(t);

        let p = parse_process_ok("a.!a + a.!b");
        let mut rendered = ptr::null_mut();
        assert_eq!(situ_process_render(p, &mut rendered), SituStatus::Ok);
        assert_eq!(take_string(rendered), "a.!a + a.!b");
        situ_process_free(p);
    }
}

#[test]
fn syntax_errors_set_a_message() {
    unsafe {
        let mut out = ptr::null_mut();
        let status = situ_type_parse(c("a &").as_ptr(), &mut out);
        assert_eq!(status, SituStatus::SyntaxError);
        assert!(out.is_null());
        let message = take_string(situ_last_error_message());
        assert!(message.contains("syntax error"), "{message}");
    }
}

#[test]
fn null_arguments_are_rejected() {
    unsafe {
        let mut flag = false;
        assert_eq!(
            situ_subtype(ptr::null(), ptr::null(), &mut flag),
            SituStatus::NullArgument
        );
        let mut out = ptr::null_mut();
        assert_eq!(situ_type_parse(ptr::null(), &mut out), SituStatus::NullArgument);
    }
}

#[test]
fn subtype_and_relatives() {
    unsafe {
        let meet_ab = parse_type_ok("!a.end & !b.end");
        let just_b = parse_type_ok("!b.end");
        let mut flag = false;
        assert_eq!(situ_subtype(meet_ab, just_b, &mut flag), SituStatus::Ok);
        assert!(flag);
        assert_eq!(situ_subtype(just_b, meet_ab, &mut flag), SituStatus::Ok);
        assert!(!flag);
        assert_eq!(situ_equivalent(meet_ab, meet_ab, &mut flag), SituStatus::Ok);
        assert!(flag);
        assert_eq!(situ_type_viable(meet_ab, &mut flag), SituStatus::Ok);
        assert!(flag);
        situ_type_free(meet_ab);
        situ_type_free(just_b);
    }
}

#[test]
fn normalize_meet_join_dual() {
    unsafe {
        let t = parse_type_ok("(a|b|c)&(b|c|d)");
        let mut nf = ptr::null_mut();
        assert_eq!(situ_type_normalize(t, &mut nf), SituStatus::Ok);
        let mut rendered = ptr::null_mut();
        assert_eq!(situ_type_render(nf, &mut rendered), SituStatus::Ok);
        assert_eq!(take_string(rendered), "b.end | c.end");
        situ_type_free(nf);
        situ_type_free(t);

        let l = parse_type_ok("!a.!b");
        let r = parse_type_ok("!a.!c");
        let mut met = ptr::null_mut();
        assert_eq!(situ_type_meet(l, r, &mut met), SituStatus::Ok);
        let mut rendered = ptr::null_mut();
        assert_eq!(situ_type_render(met, &mut rendered), SituStatus::Ok);
        assert_eq!(take_string(rendered), "!a.(!b.end & !c.end)");
        situ_type_free(met);

        let mut dualed = ptr::null_mut();
        assert_eq!(situ_type_dual(l, &mut dualed), SituStatus::Ok);
        let mut rendered = ptr::null_mut();
        assert_eq!(situ_type_render(dualed, &mut rendered), SituStatus::Ok);
        assert_eq!(take_string(rendered), "a.b");
        situ_type_free(dualed);

        let mut joined = ptr::null_mut();
        assert_eq!(situ_type_join(l, r, &mut joined), SituStatus::Ok);
        situ_type_free(joined);
        situ_type_free(l);
        situ_type_free(r);
    }
}

#[test]
fn membership_checking_orthogonality() {
    unsafe {
        let p = parse_process_ok("!a (+) !b");
        let t = parse_type_ok("a | b");
        let mut flag = false;
        assert_eq!(situ_member(p, t, &mut flag), SituStatus::Ok);
        assert!(flag);
        situ_type_free(t);
        situ_process_free(p);

        let t = parse_type_ok("a.(!a & !b)");
        let server = parse_process_ok("a.!a + a.!b");
        let mut flag = false;
        assert_eq!(situ_check(t, server, &mut flag), SituStatus::Ok);
        assert!(flag);
        situ_type_free(t);

        let client = parse_process_ok("!a.(a + b)");
        assert_eq!(situ_orthogonal(client, server, &mut flag), SituStatus::Ok);
        assert!(flag);
        situ_process_free(client);
        situ_process_free(server);
    }
}

#[test]
fn refinement_witness_crosses_the_boundary() {
    unsafe {
        let narrow = parse_process_ok("a.b + b.d");
        let wide = parse_process_ok("a.b + b.c + b.d");
        let mut holds = true;
        let mut witness = ptr::null_mut();
        assert_eq!(
            situ_refines_bounded(narrow, wide, 3, &mut holds, &mut witness),
            SituStatus::Ok
        );
        assert!(!holds);
        assert!(!witness.is_null());
        let mut rendered = ptr::null_mut();
        assert_eq!(situ_process_render(witness, &mut rendered), SituStatus::Ok);
        assert_eq!(take_string(rendered), "!b.!d");
        situ_process_free(witness);

        let mut flag = false;
        assert_eq!(situ_refines_bounded(wide, narrow, 2, &mut flag, ptr::null_mut()),
                   SituStatus::Ok);
        assert!(flag);
        situ_process_free(narrow);
        situ_process_free(wide);
    }
}

#[test]
fn projection() {
    unsafe {
        let global = c("A->B:a; A->B:b; end [] A->B:a; A->B:c; end");
        let mut out = ptr::null_mut();
        assert_eq!(situ_project(global.as_ptr(), c("A").as_ptr(), &mut out), SituStatus::Ok);
        let mut rendered = ptr::null_mut();
        assert_eq!(situ_type_render(out, &mut rendered), SituStatus::Ok);
        assert_eq!(take_string(rendered), "!a.(!b.end & !c.end)");
        situ_type_free(out);

        let mut out = ptr::null_mut();
        assert_eq!(
            situ_project(global.as_ptr(), c("C").as_ptr(), &mut out),
            SituStatus::ProjectionError
        );
        assert_eq!(
            situ_project(c("A->A:x; end").as_ptr(), c("A").as_ptr(), &mut out),
            SituStatus::RoleError
        );
        assert_eq!(
            situ_project(c("@@").as_ptr(), c("A").as_ptr(), &mut out),
            SituStatus::SyntaxError
        );
    }
}

#[test]
fn generated_header_compiles_as_c() {
    let header = concat!(env!("CARGO_MANIFEST_DIR"), "/include/situ.h");
    let compiler = std::process::Command::new("cc")
        .args(["-std=c99", "-fsyntax-only", "-x", "c", header])
        .status();
    match compiler {
        Ok(status) => assert!(status.success(), "cc rejected the generated header"),
        Err(_) => eprintln!("cc unavailable; skipping header syntax check"),
    }
}
