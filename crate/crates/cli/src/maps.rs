//! The `maps` command: a look at the matrices around one Koszul module.

use serde::Serialize;
use syzygy_core::linalg::{homology_dim, Field, PrimeField, Rationals, SparseMatrix};
use syzygy_core::multilinear::{
    co_wahl_delta, fiber_dual_injectivity, gamma, gamma_prime, kernel_regularity, koszul_pair, tau_map,
};
use syzygy_core::MapVariant;

use crate::args::{Common, Format, MapsArgs};
use crate::CliError;

#[derive(Serialize)]
struct MapInfo {
    name: String,
    domain: usize,
    codomain: usize,
    rank: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    triplets: Option<Vec<(usize, usize, String)>>,
}

#[derive(Serialize)]
struct Dump {
    p: usize,
    g: usize,
    q: usize,
    variant: MapVariant,
    #[serde(rename = "char")]
    characteristic: u64,
    maps: Vec<MapInfo>,
    koszul_module_dim: usize,
    gamma_prime_surjective: bool,
    fiber_at_one_injective: bool,
    kernel_regular: bool,
}

fn info<F: Field>(name: &str, m: &SparseMatrix<F>, triplets: bool) -> MapInfo {
    let field = m.field();
    MapInfo {
        name: name.to_string(),
        domain: m.domain_dim(),
        codomain: m.codomain_dim(),
        rank: m.rank(),
        triplets: triplets.then(|| m.triplets().map(|(r, c, x)| (r, c, field.display(x))).collect()),
    }
}

fn dump<F: Field>(field: &F, a: &MapsArgs, g: usize) -> Result<Dump, CliError> {
    let (p, variant) = (a.p, a.variant);
    let core = |e: syzygy_core::multilinear::MapError| CliError::Core(e.into());
    let gm = gamma(g, p, variant, field).map_err(core)?;
    let q = g - p - 3;
    let mut maps = vec![info("Δ", &co_wahl_delta(p, variant, field), a.triplets)];
    if variant == MapVariant::Carpet {
        maps.push(info("τ", &tau_map(p + 2, field), a.triplets));
    }
    let (delta, mult) = koszul_pair(q, p + 3, field);
    maps.push(info("δ", &delta, a.triplets));
    maps.push(info("mult", &mult, a.triplets));
    maps.push(info("γ", &gm, a.triplets));
    let gp = gamma_prime(p, q, variant, field);
    maps.push(info("γ'", &gp, a.triplets));
    let module = homology_dim(&gm, &mult).map_err(|e| CliError::Core(e.into()))?;
    let mut h = vec![field.zero(); p + 3];
    h[0] = field.one();
    Ok(Dump {
        p,
        g,
        q,
        variant,
        characteristic: field.characteristic(),
        koszul_module_dim: module,
        gamma_prime_surjective: gp.rank() == gp.codomain_dim(),
        fiber_at_one_injective: fiber_dual_injectivity(p, &h, variant, field).map_err(core)?,
        kernel_regular: kernel_regularity(p, variant, field).regular,
        maps,
    })
}

fn pretty(d: &Dump) -> String {
    let mut out = format!(
        "p={} g={} q={} variant={} char={}\n",
        d.p, d.g, d.q, d.variant, d.characteristic
    );
    for m in &d.maps {
        out.push_str(&format!(
            "{:<5} {:>6} -> {:<6} rank {}\n",
            m.name, m.domain, m.codomain, m.rank
        ));
        for (r, c, x) in m.triplets.iter().flatten() {
            out.push_str(&format!("      ({r}, {c}) {x}\n"));
        }
    }
    out.push_str(&format!("Koszul module dimension: {}\n", d.koszul_module_dim));
    out.push_str(&format!("γ' onto the kernel of mult: {}\n", d.gamma_prime_surjective));
    let fiber = if d.fiber_at_one_injective { "injective" } else { "fails" };
    out.push_str(&format!("fiber at h = 1: {fiber}\n"));
    out.push_str(&format!("kernel bundle regular: {}\n", d.kernel_regular));
    out
}

pub fn run(common: &Common, a: &MapsArgs) -> Result<bool, CliError> {
    let g = a.g.unwrap_or(a.p + 3);
    let d = if a.field.is_zero_char() {
        dump(&Rationals, a, g)?
    } else {
        let f = PrimeField::new(a.field.characteristic()).map_err(|e| CliError::Core(e.into()))?;
        dump(&f, a, g)?
    };
    match common.format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&d).expect("dump serializes")),
        Format::Csv => {
            println!("map,domain,codomain,rank");
            for m in &d.maps {
                println!("{},{},{},{}", m.name, m.domain, m.codomain, m.rank);
            }
        }
        Format::Pretty => print!("{}", pretty(&d)),
    }
    Ok(true)
}
