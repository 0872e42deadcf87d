use std::env;
use std::path::PathBuf;

fn main() {
    let crate_dir = env::var("CARGO_MANIFEST_DIR").unwrap();

    println!("cargo:rerun-if-changed=src/lib.rs");
    println!("cargo:rerun-if-changed=cbindgen.toml");

    let config = cbindgen::Config::from_file(PathBuf::from(&crate_dir).join("cbindgen.toml"))
        .unwrap_or_default();

    match cbindgen::Builder::new()
        .with_config(config)
        .with_crate(&crate_dir)
        .generate()
    {
        Ok(bindings) => {
            let header = PathBuf::from(&crate_dir)
                .join("include")
                .join("chamanara.h");
            bindings.write_to_file(&header);
            // also drop a copy under the build output for packaging
            if let Ok(out_dir) = env::var("OUT_DIR") {
                bindings.write_to_file(PathBuf::from(out_dir).join("chamanara.h"));
            }
        }
        // syntax errors surface again when rustc compiles the crate itself
        Err(cbindgen::Error::ParseSyntaxError { .. }) => {}
        Err(e) => panic!("header generation failed: {e:?}"),
    }
}
