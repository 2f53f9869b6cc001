use std::path::Path;

use num_traits::Zero;
use serde_json::{json, Value};
use vaisman_core::classify::{build_family, classify, FamilyTag};
use vaisman_core::contact::{
    contact_verdict, lsa_completeness, lsa_from_central_extension, sasakian_central_extension, vaisman_to_cokahler,
    AlmostContactStructure, LsaProduct,
};
use vaisman_core::exact::{format_rational, parse_rational, Matrix, Rational};
use vaisman_core::hermitian::{
    construct_vaisman, kahler_flat_check, lck_verdict, nilradical_prediction, reduce_vaisman, spectrum_all_imaginary,
    ComplexStructure, HermitianData, HermitianError, KahlerFlatPackage, NilradicalCase,
};
use vaisman_core::io::AlgebraFile;
use vaisman_core::lattices::{
    abelianization, dim6_table_rows, lattice_presentation_heisenberg, lattice_presentation_oscillator,
    lattice_presentation_tower, oscillator_algebra, render_dim6_tables, tower_algebra, AbelianGroup, OscillatorParams,
    QuarterTurn,
};
use vaisman_core::liealg::{analyze, central_extension, double_extension, validate, KForm, LieAlgebra};
use vaisman_core::metricgeo::{adapted_block_basis, flat_decomposition, is_flat};

use crate::report::{certificate_json, sha256_hex, write_atomic, Report};
use crate::{Cli, Command, ConstructArgs, ConstructKind, H1Args, InputError, LatticeCommand, LatticeFamily, Structure};

type Out = Result<Option<String>, InputError>;

pub fn run(cli: &Cli, r: &mut Report) -> Out {
    match &cli.command {
        Command::Verify { file, structure } => verify(cli, r, file, *structure),
        Command::Construct(args) => construct(r, args),
        Command::Reduce { file, out } => reduce(cli, r, file, out.as_deref()),
        Command::Classify { file, dim } => run_classify(r, file, *dim),
        Command::Lattice(LatticeCommand::H1(args)) => h1(r, args),
        Command::Lattice(LatticeCommand::Table { k }) => table(r, k),
    }
}

fn load(path: &Path, r: &mut Report) -> Result<AlgebraFile, InputError> {
    let bytes = std::fs::read(path).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    r.input_digest = Some(sha256_hex(&bytes));
    serde_json::from_slice(&bytes).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn mat_json(m: &Matrix) -> Value {
    json!(m.to_rows().iter().map(|row| row.iter().map(format_rational).collect::<Vec<_>>()).collect::<Vec<_>>())
}

fn vec_json(v: &[Rational]) -> Value {
    json!(v.iter().map(format_rational).collect::<Vec<_>>())
}

fn require<T>(o: Option<T>, what: &str) -> Result<T, InputError> {
    o.ok_or_else(|| InputError(format!("the file has no \"{what}\"")))
}

fn hermitian(f: &AlgebraFile) -> Result<HermitianData, InputError> {
    let g = f.algebra()?;
    let j = require(f.j()?, "J")?;
    Ok(HermitianData::from_parts(g, f.metric()?, j)?)
}

fn structure_json(g: &LieAlgebra) -> Value {
    match analyze(g) {
        Ok(rep) => json!({
            "solvable": true,
            "nilpotent": rep.nilpotent,
            "unimodular": rep.unimodular,
            "center_dim": rep.center.dim(),
            "derived_dim": rep.derived.dim(),
            "nilradical_dim": rep.nilradical.dim(),
            "heisenberg_profile": rep.heisenberg_profile,
        }),
        Err(e) => json!({ "solvable": false, "note": e.to_string() }),
    }
}

fn verify(cli: &Cli, r: &mut Report, file: &Path, s: Structure) -> Out {
    let f = load(file, r)?;
    let g = &cli.global;
    match s {
        Structure::Lie => {
            let raw = f.raw_algebra()?;
            match validate(&raw) {
                Ok(()) => {
                    r.verdict = Some(true);
                    r.set("structure", structure_json(&raw));
                }
                Err(v) => {
                    r.verdict = Some(false);
                    r.set("violation", json!(v.to_string()));
                }
            }
        }
        Structure::Metric => {
            let alg = f.algebra()?;
            let m = f.metric()?;
            let fl = is_flat(&alg, &m)?;
            r.verdict = Some(fl.flat);
            r.set("flat", json!(fl.flat));
            if !fl.flat {
                r.set("witness", json!(fl.describe(&alg)));
            } else {
                let fd = flat_decomposition(&alg, &m)?;
                r.set("decomposition", json!({"z": fd.dim_z(), "h": fd.dim_h(), "k'": fd.dim_kprime()}));
                if let Ok(b) = adapted_block_basis(&alg, &m, &fd, &[], g.tolerance) {
                    r.set("block_lambdas", json!(b.lambdas));
                    r.set("block_residual", json!(b.residual));
                }
            }
        }
        Structure::Hermitian => {
            let alg = f.algebra()?;
            let m = f.metric()?;
            let j = require(f.j()?, "J")?;
            let cs = match ComplexStructure::almost(&alg, j) {
                Ok(cs) => cs,
                Err(e @ HermitianError::NotAlmostComplex) => {
                    r.set("reason", json!(e.to_string()));
                    r.verdict = Some(false);
                    return Ok(None);
                }
                Err(e) => return Err(e.into()),
            };
            let integrable = cs.is_integrable();
            let compatible = {
                let jm = cs.matrix();
                &(&jm.transpose() * m.gram()) * jm == *m.gram()
            };
            r.set("integrable", json!(integrable));
            r.set("compatible", json!(compatible));
            r.verdict = Some(integrable && compatible);
        }
        Structure::Lck | Structure::Vaisman => {
            let g0 = f.algebra()?;
            let j = require(f.j()?, "J")?;
            let h = match HermitianData::from_parts(g0, f.metric()?, j) {
                Ok(h) => h,
                Err(
                    e @ (HermitianError::NotAlmostComplex
                    | HermitianError::NotIntegrable(_)
                    | HermitianError::NotCompatible),
                ) => {
                    r.set("is_hermitian", json!(false));
                    r.set("reason", json!(e.to_string()));
                    r.verdict = Some(false);
                    return Ok(None);
                }
                Err(e) => return Err(e.into()),
            };
            let v = lck_verdict(&h)?;
            r.set("is_hermitian", json!(v.is_hermitian));
            r.set("is_kahler", json!(v.is_kahler));
            r.set("is_lck", json!(v.is_lck));
            r.set("is_vaisman", json!(v.is_vaisman));
            r.set("theta", json!(v.theta.display_with(h.algebra().labels())));
            r.set("lee_vector", vec_json(&v.a));
            r.set("certificate", certificate_json(&v.certificate));
            if s == Structure::Vaisman {
                r.verdict = Some(v.is_vaisman);
                let rep = analyze(h.algebra());
                if v.is_vaisman && rep.as_ref().is_ok_and(|x| x.unimodular) {
                    let sp = spectrum_all_imaginary(h.algebra(), g.samples, g.seed);
                    let mut sj = json!({ "pass": sp.pass, "checked": sp.checked });
                    if let Some((x, p)) = sp.witness {
                        sj["witness"] = json!({ "x": vec_json(&x), "char_poly": p.to_string() });
                    }
                    r.set("spectrum_all_imaginary", sj);
                }
            } else {
                r.verdict = Some(v.is_lck);
            }
        }
        Structure::KahlerFlat => {
            let alg = f.algebra()?;
            let j = require(f.j()?, "J")?;
            // a structure that fails the definition is a false verdict, not an input error
            let ok = match kahler_flat_check(&alg, &f.metric()?, &j) {
                Ok(ok) => ok,
                Err(e @ (HermitianError::NotFlat(_) | HermitianError::NotAlmostComplex | HermitianError::NotCompatible)) => {
                    r.set("reason", json!(e.to_string()));
                    false
                }
                Err(e) => return Err(e.into()),
            };
            r.set("kahler_flat", json!(ok));
            r.verdict = Some(ok);
        }
        Structure::Sasakian | Structure::Cokahler => {
            let alg = f.algebra()?;
            let phi = require(f.phi()?, "phi")?;
            let xi = require(f.xi()?, "xi")?;
            let eta = require(f.eta()?, "eta")?;
            match AlmostContactStructure::new(alg, f.metric()?, phi, xi, eta) {
                Err(e) => {
                    r.verdict = Some(false);
                    r.set("almost_contact_metric", json!(false));
                    r.set("reason", json!(e.to_string()));
                }
                Ok(a) => {
                    let v = contact_verdict(&a);
                    r.set("almost_contact_metric", json!(true));
                    r.set("is_normal", json!(v.is_normal));
                    r.set("is_sasakian", json!(v.is_sasakian_paper));
                    r.set("is_sasakian_standard_scaling", json!(v.is_sasakian_standard));
                    r.set("is_almost_cokahler", json!(v.is_almost_cokahler));
                    r.set("is_cokahler", json!(v.is_cokahler));
                    r.set("certificate", certificate_json(&v.certificate));
                    r.verdict = Some(if s == Structure::Sasakian { v.is_sasakian_paper } else { v.is_cokahler });
                }
            }
        }
        Structure::Lsa => {
            let alg = f.algebra()?;
            let table = require(f.product()?, "product")?;
            match LsaProduct::new(&alg, table) {
                Err(e) => {
                    r.verdict = Some(false);
                    r.set("identities", json!(false));
                    r.set("reason", json!(e.to_string()));
                }
                Ok(p) => {
                    let c = lsa_completeness(&p, g.samples, g.seed);
                    r.set("identities", json!(true));
                    let mut cj = json!({
                        "pass": c.pass,
                        "checked": c.checked,
                        "nilpotent_certificate": c.nilpotent_certificate,
                        "symbolic": c.symbolic,
                        "certified": c.certified(),
                    });
                    if let Some(w) = &c.witness {
                        cj["witness"] = vec_json(w);
                    }
                    r.set("completeness", cj);
                    r.verdict = Some(c.pass);
                }
            }
        }
    }
    Ok(None)
}

fn parse_list(xs: &[String]) -> Result<Vec<Rational>, InputError> {
    xs.iter().map(|s| parse_rational(s).map_err(InputError::from)).collect()
}

fn hermitian_file(h: &HermitianData) -> AlgebraFile {
    AlgebraFile::from_algebra(h.algebra()).with_metric(h.metric()).with_j(h.j())
}

fn contact_file(a: &AlmostContactStructure) -> AlgebraFile {
    AlgebraFile::from_algebra(a.algebra()).with_metric(a.metric()).with_contact(a.phi(), a.xi(), a.eta())
}

fn beta_of(f: &AlgebraFile, choice: &str) -> Result<KForm, InputError> {
    match choice {
        "omega" => Ok(hermitian(f)?.omega().clone()),
        "file" => require(f.beta()?, "beta"),
        other => Err(InputError(format!("--beta must be omega or file, got {other}"))),
    }
}

fn parse_tag(tag: &str, r: &str) -> Result<FamilyTag, InputError> {
    Ok(match tag.to_ascii_lowercase().as_str() {
        "rxh3" => FamilyTag::RxH3,
        "rsemih3" => FamilyTag::RsemiH3,
        "rxh5" => FamilyTag::RxH5,
        "rsemidrh5" => FamilyTag::RsemiDrH5(parse_rational(r)?),
        "rxs5" => FamilyTag::RxS5,
        "rsemid0s5" => FamilyTag::RsemiD0S5,
        other => return Err(InputError(format!("unknown family {other}"))),
    })
}

fn construct(r: &mut Report, args: &ConstructArgs) -> Out {
    let from = |r: &mut Report| -> Result<AlgebraFile, InputError> {
        let p = args.from.as_deref().ok_or_else(|| InputError("--from is required".into()))?;
        load(p, r)
    };
    let out: AlgebraFile = match args.kind {
        ConstructKind::CentralExt => {
            let f = from(r)?;
            if args.beta == "omega" {
                let k = f.algebra()?;
                let j = require(f.j()?, "J")?;
                contact_file(&sasakian_central_extension(&k, &f.metric()?, &j)?)
            } else {
                let beta = beta_of(&f, &args.beta)?;
                AlgebraFile::from_algebra(&central_extension(&f.algebra()?, &beta)?)
            }
        }
        ConstructKind::DoubleExt => {
            let f = from(r)?;
            let beta = beta_of(&f, &args.beta)?;
            let d = require(f.derivation()?, "derivation")?;
            let n = d.rows();
            // D is given on h and extended by zero on ξ
            let dext = Matrix::from_fn(n + 1, n + 1, |i, j| if i < n && j < n { d[(i, j)].clone() } else { Rational::zero() });
            AlgebraFile::from_algebra(&double_extension(&f.algebra()?, &beta, &dext)?)
        }
        ConstructKind::Vaisman => {
            let f = from(r)?;
            let k = f.algebra()?;
            let j = require(f.j()?, "J")?;
            let d = f.derivation()?.unwrap_or_else(|| Matrix::zeros(k.dim(), k.dim()));
            let p = KahlerFlatPackage::new(k, f.metric()?, j, d)?;
            hermitian_file(&construct_vaisman(&p)?)
        }
        ConstructKind::Cokahler => {
            let f = from(r)?;
            let c = vaisman_to_cokahler(&hermitian(&f)?)?;
            r.set("is_cokahler", json!(c.verdict.is_cokahler));
            contact_file(&c.structure)
        }
        ConstructKind::Lsa => {
            let f = from(r)?;
            let beta = beta_of(&f, &args.beta)?;
            let (g, p) = lsa_from_central_extension(&f.algebra()?, &f.metric()?, &beta)?;
            AlgebraFile::from_algebra(&g).with_product(p.table())
        }
        ConstructKind::Oscillator => {
            let p = OscillatorParams::from_rationals(&parse_list(&args.a)?)?;
            r.set("params", serde_json::to_value(&p)?);
            hermitian_file(&oscillator_algebra(&p)?)
        }
        ConstructKind::Tower => {
            let h = tower_algebra(args.l, &parse_list(&args.a)?, &parse_list(&args.alpha)?)?;
            hermitian_file(&h)
        }
        ConstructKind::Family => {
            let tag = parse_tag(args.tag.as_deref().ok_or_else(|| InputError("--tag is required".into()))?, &args.r)?;
            r.set("family", json!(tag.name()));
            hermitian_file(&build_family(&tag)?)
        }
    };
    let text = serde_json::to_string_pretty(&out)?;
    match &args.out {
        Some(p) => {
            write_atomic(p, &format!("{text}\n")).map_err(|e| InputError(format!("{}: {e}", p.display())))?;
            r.set("written", json!(p.display().to_string()));
        }
        None => r.set("file", serde_json::to_value(&out)?),
    }
    r.set("dim", json!(out.dim));
    Ok(None)
}

fn reduce(cli: &Cli, r: &mut Report, file: &Path, out: Option<&Path>) -> Out {
    let f = load(file, r)?;
    let h = hermitian(&f)?;
    let red = match reduce_vaisman(&h) {
        Ok(x) => x,
        Err(e) => {
            r.verdict = Some(false);
            r.set("reason", json!(e.to_string()));
            return Ok(None);
        }
    };
    r.verdict = Some(true);
    let pkg = &red.package;
    let kfile =
        AlgebraFile::from_algebra(&pkg.k).with_metric(&pkg.metric).with_j(pkg.j.matrix()).with_derivation(pkg.d.matrix());
    r.set("scale", json!(format_rational(&red.scale)));
    r.set("canonical_basis", mat_json(&red.canonical_basis()));
    r.set("package", serde_json::to_value(&kfile)?);
    r.set("certificate", certificate_json(&red.certificate));
    let pred = nilradical_prediction(&red)?;
    let case = match &pred.case {
        NilradicalCase::Generic => json!("generic"),
        NilradicalCase::ACentral => json!("A central"),
        NilradicalCase::Shifted { h, jh_in_h } => json!({ "shifted_by": vec_json(h), "jh_in_h": jh_in_h }),
    };
    let mut pj = json!({ "case": case, "profile": pred.profile, "nilradical_dim": pred.nilradical.dim() });
    if let Ok(rep) = analyze(h.algebra()) {
        pj["comparison"] = certificate_json(&pred.compare(&rep));
    }
    r.set("nilradical_prediction", pj);
    if let Ok(b) = adapted_block_basis(&pkg.k, &pkg.metric, &pred.decomposition, &[pkg.d.matrix().clone()], cli.global.tolerance) {
        r.set("block_params", json!(b.block_params));
        r.set("block_residual", json!(b.residual));
    }
    if let Some(p) = out {
        let text = serde_json::to_string_pretty(&kfile)?;
        write_atomic(p, &format!("{text}\n")).map_err(|e| InputError(format!("{}: {e}", p.display())))?;
        r.set("written", json!(p.display().to_string()));
    }
    Ok(None)
}

fn run_classify(r: &mut Report, file: &Path, dim: Option<usize>) -> Out {
    let f = load(file, r)?;
    let g = f.algebra()?;
    if let Some(d) = dim {
        if d != g.dim() {
            return Err(InputError(format!("--dim {d} but the algebra has dimension {}", g.dim())));
        }
    }
    if f.j.is_some() {
        let h = hermitian(&f)?;
        r.set("is_vaisman", json!(lck_verdict(&h)?.is_vaisman));
    }
    let c = classify(&g)?;
    r.set("classification", json!(c.label()));
    r.set("invariant", serde_json::to_value(&c.invariant)?);
    r.set("matches", serde_json::to_value(&c.matches)?);
    if let Some(n) = &c.note {
        r.set("note", json!(n));
    }
    r.verdict = Some(!c.matches.is_empty());
    Ok(Some(format!("{}\n", c.label())))
}

fn group_text(g: &AbelianGroup) -> String {
    format!("H_1 = {g}\nb_1 = {}\n", g.rank)
}

fn h1(r: &mut Report, a: &H1Args) -> Out {
    let g = match a.family {
        LatticeFamily::Oscillator => {
            let p = OscillatorParams::new(&a.a)?;
            r.set("params", serde_json::to_value(&p)?);
            // the closed forms cover quarter, half and full turns
            r.provenance = Some(if a.turn.rem_euclid(4) == 3 { "derived" } else { "closed form" });
            abelianization(&lattice_presentation_oscillator(&p, a.k, QuarterTurn(a.turn))?)
        }
        LatticeFamily::Tower => {
            if let Some(m) = a.m {
                if m != a.a.len() {
                    return Err(InputError(format!("-m {m} but {} speeds given with -a", a.a.len())));
                }
            }
            r.provenance = Some("derived, no published table");
            let lp = lattice_presentation_tower(a.l, &a.a, &a.alpha, a.k, QuarterTurn(a.turn_j), QuarterTurn(a.turn_i))?;
            abelianization(&lp)
        }
        LatticeFamily::Heisenberg => {
            r.provenance = Some("closed form");
            abelianization(&lattice_presentation_heisenberg(a.n, a.k)?)
        }
    };
    if let Value::Object(m) = serde_json::to_value(&g)? {
        for (k, v) in m {
            r.set(&k, v);
        }
    }
    r.set("group", json!(g.to_string()));
    Ok(Some(group_text(&g)))
}

fn table(r: &mut Report, ks: &[i64]) -> Out {
    if ks.iter().any(|&k| k <= 0) {
        return Err(InputError("k must be positive".into()));
    }
    let rows = dim6_table_rows(ks);
    r.verdict = Some(rows.iter().all(|x| x.agrees));
    r.provenance = Some("published table, recomputed by abelianization");
    r.set("rows", serde_json::to_value(&rows)?);
    Ok(Some(render_dim6_tables(ks)))
}
