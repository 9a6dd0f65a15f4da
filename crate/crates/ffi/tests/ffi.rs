use std::ffi::{c_char, CStr, CString};
use std::ptr;

use parmon_ffi::*;

const XYZ: &str = "elements: 1 x y z\nidentity: 1\nx y = x\ny y = y\ny z = z\n";

fn parse(text: &str) -> *mut PmMonoid {
    let text = CString::new(text).unwrap();
    let mut m = ptr::null_mut();
    assert_eq!(
        unsafe { pm_monoid_parse(text.as_ptr(), &mut m) },
        PmStatus::Ok
    );
    assert!(!m.is_null());
    m
}

fn take(s: *mut c_char) -> String {
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { pm_string_free(s) };
    out
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(pm_last_error_message()) }
        .to_str()
        .unwrap()
        .to_string()
}

fn flag(
    f: unsafe extern "C" fn(*const PmMonoid, *mut bool) -> PmStatus,
    m: *const PmMonoid,
) -> bool {
    let mut b = false;
    assert_eq!(unsafe { f(m, &mut b) }, PmStatus::Ok);
    b
}

#[test]
fn xyz_round_trip() {
    let m = parse(XYZ);
    assert_eq!(unsafe { pm_monoid_size(m) }, 4);
    assert!(flag(pm_monoid_validate, m));
    assert!(flag(pm_monoid_is_confluent, m));
    assert!(!flag(pm_monoid_is_catenary, m));
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { pm_monoid_serialize(m, &mut s) }, PmStatus::Ok);
    assert_eq!(take(s), XYZ);
    unsafe { pm_monoid_free(m) };
}

#[test]
fn normalize_and_star() {
    let letters = CString::new("abc").unwrap();
    let mut m = ptr::null_mut();
    assert_eq!(
        unsafe { pm_gen_no_common_letters(letters.as_ptr(), &mut m) },
        PmStatus::Ok
    );
    assert_eq!(unsafe { pm_monoid_size(m) }, 16);
    assert!(!flag(pm_monoid_is_confluent, m));

    let word = CString::new("a b a").unwrap();
    let mut s = ptr::null_mut();
    assert_eq!(
        unsafe { pm_normalize(m, word.as_ptr(), &mut s) },
        PmStatus::Ok
    );
    assert_eq!(take(s), "ab a");

    let (u, v) = (CString::new("a").unwrap(), CString::new("ba").unwrap());
    assert_eq!(
        unsafe { pm_star(m, u.as_ptr(), v.as_ptr(), &mut s) },
        PmStatus::Ok
    );
    assert_eq!(take(s), "a ba");

    let bad = CString::new("a b").unwrap();
    assert_eq!(
        unsafe { pm_star(m, bad.as_ptr(), v.as_ptr(), &mut s) },
        PmStatus::NotIrreducible
    );
    assert!(last_error().contains("not irreducible"));
    let unknown = CString::new("a q").unwrap();
    assert_eq!(
        unsafe { pm_normalize(m, unknown.as_ptr(), &mut s) },
        PmStatus::UnknownElement
    );
    unsafe { pm_monoid_free(m) };
}

#[test]
fn error_codes() {
    let mut m = ptr::null_mut();
    let bad = CString::new("elements: 1 x\nidentity: 1\nx x = q\n").unwrap();
    assert_eq!(
        unsafe { pm_monoid_parse(bad.as_ptr(), &mut m) },
        PmStatus::Parse
    );
    assert!(m.is_null());
    assert!(last_error().contains("line 3"));

    assert_eq!(
        unsafe { pm_monoid_parse(ptr::null(), &mut m) },
        PmStatus::NullPointer
    );
    let mut b = false;
    assert_eq!(
        unsafe { pm_monoid_validate(ptr::null(), &mut b) },
        PmStatus::NullPointer
    );
    assert_eq!(unsafe { pm_monoid_size(ptr::null()) }, 0);

    assert_eq!(unsafe { pm_gen_disjoint_union(9, &mut m) }, PmStatus::Limit);
    let letters = CString::new("a1").unwrap();
    assert_eq!(
        unsafe { pm_gen_no_common_letters(letters.as_ptr(), &mut m) },
        PmStatus::InvalidArgument
    );

    let invalid_utf8 = [0xffu8, 0];
    assert_eq!(
        unsafe { pm_monoid_parse(invalid_utf8.as_ptr() as *const c_char, &mut m) },
        PmStatus::InvalidUtf8
    );

    assert_eq!(unsafe { pm_gen_disjoint_union(2, &mut m) }, PmStatus::Ok);
    assert!(last_error().is_empty());
    assert_eq!(unsafe { pm_monoid_size(m) }, 4);
    unsafe {
        pm_monoid_free(m);
        pm_monoid_free(ptr::null_mut());
        pm_string_free(ptr::null_mut());
    }
}

#[test]
fn invalid_table_parses_but_does_not_validate() {
    let m = parse("elements: 1 x y a\nidentity: 1\nx y = a\na a = a\n");
    assert!(!flag(pm_monoid_validate, m));
    unsafe { pm_monoid_free(m) };
}

fn header() -> String {
    std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/parmon.h")).unwrap()
}

#[test]
fn header_declares_the_api() {
    let h = header();
    for name in [
        "pm_monoid_parse",
        "pm_monoid_free",
        "pm_monoid_size",
        "pm_monoid_validate",
        "pm_monoid_is_confluent",
        "pm_monoid_is_catenary",
        "pm_monoid_serialize",
        "pm_normalize",
        "pm_star",
        "pm_gen_no_common_letters",
        "pm_gen_disjoint_union",
        "pm_string_free",
        "pm_last_error_message",
        "typedef struct PmMonoid PmMonoid;",
        "PM_STATUS_NOT_IRREDUCIBLE = 5",
    ] {
        assert!(h.contains(name), "{name} missing from header");
    }
}

#[test]
fn header_compiles_as_c() {
    let Ok(cc) = which_cc() else { return };
    let dir = std::env::temp_dir().join(format!("parmon-ffi-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let src = dir.join("check.c");
    std::fs::write(
        &src,
        "#include \"parmon.h\"\nint main(void) { PmMonoid *m = 0; return pm_monoid_parse(\"\", &m) == PM_STATUS_OK; }\n",
    )
    .unwrap();
    let status = std::process::Command::new(cc)
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I"])
        .arg(concat!(env!("CARGO_MANIFEST_DIR"), "/include"))
        .arg(&src)
        .status()
        .unwrap();
    std::fs::remove_dir_all(dir).unwrap();
    assert!(status.success());
}

fn which_cc() -> Result<&'static str, ()> {
    ["cc", "gcc", "clang"]
        .into_iter()
        .find(|c| {
            std::process::Command::new(c)
                .arg("--version")
                .output()
                .is_ok()
        })
        .ok_or(())
}

/// Links the C demo against the static library when cargo has built it.
#[test]
fn c_program_links_and_runs() {
    let Ok(cc) = which_cc() else { return };
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().and_then(|d| d.parent()).unwrap();
    let lib = profile_dir.join("libparmon_ffi.a");
    if !lib.exists() {
        eprintln!("skipping: {} not built", lib.display());
        return;
    }
    let dir = std::env::temp_dir().join(format!("parmon-ffi-link-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bin = dir.join("demo");
    let status = std::process::Command::new(cc)
        .arg("-std=c99")
        .arg("-I")
        .arg(concat!(env!("CARGO_MANIFEST_DIR"), "/include"))
        .arg(concat!(env!("CARGO_MANIFEST_DIR"), "/tests/c/demo.c"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .unwrap();
    assert!(status.success());
    let out = std::process::Command::new(&bin).output().unwrap();
    std::fs::remove_dir_all(dir).unwrap();
    assert!(out.status.success());
    assert_eq!(
        String::from_utf8_lossy(&out.stdout),
        "size=16 confluent=0 lstd=ab a\n"
    );
}
