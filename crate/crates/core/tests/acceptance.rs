use std::collections::BTreeSet;
use std::fmt::Display;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde_json::{json, Value};

use segalkit::bisimplicial::rules::{copairing, cosk_map, cosk_unit, pullback_induced, reduce_unit};
use segalkit::bisimplicial::spaces::{cosk_adjunct, sk_adjunct};
use segalkit::bisimplicial::{find_isomorphism, BisimplicialHom, BisimplicialMap, BisimplicialSet};
use segalkit::cat::{
    cat_equiv_check, dk_check_sc, enumerate_functors, nerve, nerve_map, psi_elements, psi_filtration, tau1, tau1_adjunct, tau1_unit, CatDocument,
    FiniteCategory, FiniteSimplicialCategory, Functor, RewriteBound, SimplicialFunctor,
};
use segalkit::cli::{self, write_corpus, Workspace};
use segalkit::invariants::{homology, is_kan, verify_we, we_verdict, Certificate, State};
use segalkit::lifting::{has_rlp, has_rlp_bss, injective_consequences, to_point, FamilyRange, GeneratorFamily};
use segalkit::segal::{
    build_spine, complete_check, discretize, e_space, fiber, hom_decomposition, ic_generator, p_object, phi_factorization, q_object, reduce_adjunct,
    reedy_reduction, segal_check, spine_inclusion, vertex_tuples, vertices_t0, SpineKind,
};
use segalkit::simplicial::standard::{boundary, horn, simplex};
use segalkit::simplicial::{hom_count, NdId, Simplex, SimplicialMap, SimplicialSet};
use segalkit::{Budget, Error};

type Outcome = Result<Value, String>;
type Key = Vec<Vec<Simplex>>;

trait Ctx<T> {
    fn ctx(self, what: &str) -> Result<T, String>;
}

impl<T, E: Display> Ctx<T> for Result<T, E> {
    fn ctx(self, what: &str) -> Result<T, String> {
        self.map_err(|e| format!("{what}: {e}"))
    }
}

macro_rules! ensure {
    ($c:expr, $($m:tt)+) => {
        if !$c {
            return Err(format!($($m)+));
        }
    };
}

fn b() -> Budget {
    Budget::default()
}

struct Corpus {
    _dir: tempfile::TempDir,
    root: PathBuf,
    ssets: Vec<(String, Arc<SimplicialSet>)>,
    smaps: Vec<(String, SimplicialMap)>,
    bss: Vec<(String, BisimplicialSet)>,
    cats: CatDocument,
    scats: CatDocument,
}

fn files(dir: &Path, ext: &str) -> Vec<PathBuf> {
    let mut out: Vec<PathBuf> = std::fs::read_dir(dir).unwrap().map(|e| e.unwrap().path()).filter(|p| p.extension().is_some_and(|e| e == ext)).collect();
    out.sort();
    out
}

fn stem(p: &Path) -> String {
    p.file_stem().unwrap().to_string_lossy().into_owned()
}

impl Corpus {
    fn load() -> Result<Corpus, String> {
        let dir = tempfile::tempdir().ctx("tempdir")?;
        let root = dir.path().to_path_buf();
        write_corpus(&root, b()).ctx("corpus")?;
        let mut ws = Workspace::new(b(), 3);
        let mut ssets = Vec::new();
        for p in files(&root.join("simplicial"), "sset") {
            ssets.push((stem(&p), ws.sset(&p).ctx("sset")?));
        }
        let mut smaps = Vec::new();
        for p in files(&root.join("simplicial"), "smap") {
            smaps.push((stem(&p), ws.smap(&p).ctx("smap")?));
        }
        let mut bss = Vec::new();
        for sub in ["nerve", "spine"] {
            for p in files(&root.join(sub), "bss") {
                bss.push((stem(&p), ws.bss(&p).ctx("bss")?));
            }
        }
        let cats = ws.cat(&root.join("cat/categories.cat")).ctx("categories")?;
        let scats = ws.cat(&root.join("cat/scats.cat")).ctx("scats")?;
        Ok(Corpus { _dir: dir, root, ssets, smaps, bss, cats, scats })
    }

    fn bss(&self, name: &str) -> BisimplicialSet {
        self.bss.iter().find(|(n, _)| n == name).unwrap_or_else(|| panic!("corpus object {name}")).1.clone()
    }

    fn cat(&self, name: &str) -> Arc<FiniteCategory> {
        self.cats.category(name).unwrap_or_else(|| panic!("corpus category {name}")).clone()
    }

    fn functor(&self, name: &str) -> Functor {
        self.cats.functors.iter().find(|(n, _)| n == name).unwrap_or_else(|| panic!("corpus functor {name}")).1.clone()
    }

    fn nerves(&self) -> Vec<(String, BisimplicialSet)> {
        self.bss.iter().filter(|(n, _)| n.starts_with("nerve_")).cloned().collect()
    }
}

fn nerve_of(f: &Functor) -> BisimplicialMap {
    nerve_map(f, &nerve(&f.source), &nerve(&f.target))
}

fn sorted_keys(maps: &[BisimplicialMap], w: usize) -> Result<Vec<Key>, String> {
    let mut out = maps.iter().map(|m| m.key(w, b())).collect::<Result<Vec<_>, _>>().ctx("key")?;
    out.sort();
    Ok(out)
}

fn homs(x: &BisimplicialSet, y: &BisimplicialSet, w: usize) -> Result<Vec<BisimplicialMap>, String> {
    BisimplicialHom::new(x, y, w).budget(b()).collect().ctx(&format!("Hom({}, {})", x.name(), y.name()))
}

fn sk_cosk_bijection(x: &BisimplicialSet, y: &BisimplicialSet, n: usize, w: usize) -> Result<usize, String> {
    let (skx, cy) = (x.skeleton(n), y.cosk(n));
    let left = homs(&skx, y, w)?;
    let right = homs(x, &cy, w)?;
    ensure!(left.len() == right.len(), "sk/cosk {} -> {} n={n}: {} vs {}", x.name(), y.name(), left.len(), right.len());
    let mut image = Vec::new();
    for f in &left {
        let g = cosk_adjunct(f, x, &cy, n, w, b()).ctx("cosk adjunct")?;
        g.verify(w, b()).ctx("adjunct is a map")?;
        let back = sk_adjunct(&g, &skx, y, n, w, b()).ctx("sk adjunct")?;
        ensure!(back.key(w, b()).unwrap() == f.key(w, b()).unwrap(), "sk/cosk round trip differs on {}", x.name());
        image.push(g);
    }
    for g in &right {
        let f = sk_adjunct(g, &skx, y, n, w, b()).ctx("sk adjunct")?;
        f.verify(w, b()).ctx("adjunct is a map")?;
        let again = cosk_adjunct(&f, x, &cy, n, w, b()).ctx("cosk adjunct")?;
        ensure!(again.key(w, b()).unwrap() == g.key(w, b()).unwrap(), "cosk/sk round trip differs on {}", x.name());
    }
    ensure!(sorted_keys(&image, w)? == sorted_keys(&right, w)?, "adjuncts do not exhaust Hom(X, cosk Y)");
    Ok(left.len())
}

fn reduction_bijection(x: &BisimplicialSet, y: &BisimplicialSet, w: usize) -> Result<usize, String> {
    let rx = x.reduce();
    let unit = reduce_unit(x, &rx);
    let maps = homs(x, y, w)?;
    let reduced = homs(&rx, y, w)?;
    ensure!(maps.len() == reduced.len(), "reduction {} -> {}: {} vs {}", x.name(), y.name(), maps.len(), reduced.len());
    for h in &maps {
        let g = reduce_adjunct(h, &rx);
        g.verify(w, b()).ctx("reduced adjunct")?;
        ensure!(unit.then(&g).key(w, b()).unwrap() == h.key(w, b()).unwrap(), "unit does not recover the map");
    }
    for g in &reduced {
        let h = unit.then(g);
        ensure!(reduce_adjunct(&h, &rx).key(w, b()).unwrap() == g.key(w, b()).unwrap(), "reduced adjunct does not recover the map");
    }
    Ok(maps.len())
}

/// `Hom(A, W) ≅ Hom(A, RW)` for `A` with discrete row 0: a map `h` lifts to
/// the pullback through `h` and the map on points.
fn discretization_bijection(a: &BisimplicialSet, w: &BisimplicialSet, win: usize) -> Result<usize, String> {
    let d = discretize(w, b()).ctx("discretize")?;
    let rw = d.set.clone();
    let pts: Vec<NdId> = w.row(0, b()).ctx("row 0")?.vertices().to_vec();
    let c = BisimplicialSet::constant(&Arc::new(SimplicialSet::discrete(pts.len())));
    let (cw, cc, ca) = (w.cosk(0), c.cosk(0), a.cosk(0));
    let unit_w = cosk_unit(w, &cw, 0);
    let lift = |h: &BisimplicialMap| -> Result<BisimplicialMap, String> {
        let h0 = h.row(0, b()).ctx("row 0")?;
        let pts = pts.clone();
        let low = BisimplicialMap::from_rows(a, &c, move |k, ta, tc| {
            if k > 0 {
                return Err(Error::Malformed("only row 0 is used".into()));
            }
            let images = ta.rows[0].ids().map(|p| Simplex::nondegenerate(pts.iter().position(|&q| q == h0.image(p).nd).unwrap() as NdId, 0)).collect();
            SimplicialMap::new(ta.rows[0].clone(), tc.rows[0].clone(), images)
        });
        let v = cosk_unit(a, &ca, 0).then(&cosk_map(&low, &ca, &cc, 0));
        let g = pullback_induced(&rw, &unit_w, h, &v);
        Ok(BisimplicialMap::stored(a, &rw, g.rows(win, b()).ctx("lift")?))
    };
    let maps = homs(a, w, win)?;
    let lifted = homs(a, &rw, win)?;
    ensure!(maps.len() == lifted.len(), "R adjunction {} -> {}: {} vs {}", a.name(), w.name(), maps.len(), lifted.len());
    for h in &maps {
        let g = lift(h)?;
        g.verify(win, b()).ctx("lift is a map")?;
        ensure!(g.then(&d.map).key(win, b()).unwrap() == h.key(win, b()).unwrap(), "lift does not recover the map");
    }
    for g in &lifted {
        let again = lift(&g.then(&d.map))?;
        ensure!(again.key(win, b()).unwrap() == g.key(win, b()).unwrap(), "lift of the composite differs");
    }
    Ok(maps.len())
}

fn tau1_bijection(x: &BisimplicialSet, d: &Arc<FiniteCategory>, w: usize) -> Result<usize, String> {
    let p = tau1(x, RewriteBound::default(), b()).ctx("tau1")?;
    let tau = Arc::new(p.category().ok_or("tau1 undecided")?.clone());
    let (nt, nd) = (nerve(&tau), nerve(d));
    let unit = tau1_unit(x, &p, &nt, w, b()).ctx("unit")?;
    let functors = enumerate_functors(&tau, d, b()).ctx("functors")?;
    let maps = homs(x, &nd, w)?;
    ensure!(functors.len() == maps.len(), "tau1 {} -> {}: {} vs {}", x.name(), d.name, functors.len(), maps.len());
    for f in &functors {
        let g = unit.then(&nerve_map(f, &nt, &nd));
        g.verify(w, b()).ctx("adjunct map")?;
        ensure!(&tau1_adjunct(&g, &p, &tau, d, b()).ctx("adjunct")? == f, "functor round trip differs");
    }
    for g in &maps {
        let f = tau1_adjunct(g, &p, &tau, d, b()).ctx("adjunct")?;
        ensure!(unit.then(&nerve_map(&f, &nt, &nd)).key(w, b()).unwrap() == g.key(w, b()).unwrap(), "map round trip differs");
    }
    Ok(maps.len())
}

fn non_discrete_objects() -> Vec<BisimplicialSet> {
    let c1 = BisimplicialSet::constant(&simplex(1));
    vec![
        c1.clone().renamed("c(D1)"),
        BisimplicialSet::constant(&boundary(2).set).renamed("c(dD2)"),
        BisimplicialSet::product(&[c1, BisimplicialSet::transpose(&simplex(1))]).renamed("c(D1)xD1t"),
    ]
}

fn adjunctions(c: &Corpus) -> Outcome {
    let mut sk = Vec::new();
    let mut sources: Vec<BisimplicialSet> = c.bss.iter().map(|(_, x)| x.clone()).collect();
    let mut ws = Workspace::new(b(), 3);
    for g in ["If_1_1.src", "If_1_1.tgt"] {
        sources.push(ws.bss(&c.root.join(format!("gen/{g}.bss"))).ctx("generator object")?);
    }
    let targets = [c.bss("nerve_I1"), c.bss("nerve_iso"), c.bss("Delta1")];
    for x in &sources {
        for y in &targets {
            for n in 0..=1 {
                sk.push(json!([x.name(), y.name(), n, sk_cosk_bijection(x, y, n, 2)?]));
            }
        }
    }
    let mut red = Vec::new();
    for x in non_discrete_objects() {
        for y in ["nerve_I1", "nerve_iso", "G2"] {
            red.push(json!([x.name(), y, reduction_bijection(&x, &c.bss(y), 2)?]));
        }
    }
    let mut disc = Vec::new();
    for a in ["nerve_I1", "nerve_iso", "G2", "Delta1"] {
        for w in non_discrete_objects() {
            disc.push(json!([a, w.name(), discretization_bijection(&c.bss(a), &w, 2)?]));
        }
    }
    let mut t1 = Vec::new();
    for x in ["G2", "Delta2", "nerve_iso", "nerve_I1", "G3"] {
        for d in ["I1", "iso", "I2", "C2"] {
            t1.push(json!([x, d, tau1_bijection(&c.bss(x), &c.cat(d), 3)?]));
        }
    }
    Ok(json!({ "sk_cosk": sk, "reduction": red, "discretization": disc, "tau1_nerve": t1 }))
}

/// The fiber of row `n` over `v`, computed from the vertex operators.
fn fiber_oracle(x: &BisimplicialSet, v: &[usize]) -> Result<Arc<SimplicialSet>, String> {
    let n = v.len() - 1;
    let t = x.rows(n, b()).ctx("rows")?;
    let ops: Vec<SimplicialMap> = (0..=n).map(|i| t.vertex(n, i)).collect();
    let row = &t.rows[n];
    let gens: Vec<NdId> = row.ids().filter(|&s| ops.iter().zip(v).all(|(op, &o)| op.image(s).nd as usize == o)).collect();
    Ok(row.subcomplex(gens).0)
}

fn decompositions(c: &Corpus) -> Outcome {
    let mut rows = Vec::new();
    for (name, x) in &c.bss {
        for m in 0..=2 {
            for n in 0..=2 {
                for (kind, p) in [("P", p_object(m, n)), ("Q", q_object(m, n))] {
                    if p.legs.is_none() {
                        continue;
                    }
                    let d = hom_decomposition(&p, x, b()).ctx("decomposition")?;
                    let t = x.rows(n, b()).ctx("rows")?;
                    let mut oracle = 0;
                    for v in vertex_tuples(&t, n) {
                        oracle += hom_count(&p.factor, &fiber_oracle(x, &v)?, b()).ctx("hom count")?;
                    }
                    ensure!(d.bijective, "{kind}({m},{n}) into {name} is not a bijection: {d:?}");
                    ensure!(d.maps == oracle && d.fiber_maps == oracle, "{kind}({m},{n}) into {name}: {} maps, oracle {oracle}", d.maps);
                    rows.push(json!([kind, m, n, name, d.maps]));
                }
            }
        }
    }
    let mut maps: Vec<(String, BisimplicialMap)> = c.cats.functors.iter().map(|(n, f)| (n.clone(), nerve_of(f))).collect();
    let i2 = c.bss("nerve_I2");
    maps.push(("I2_nerve_identity".into(), BisimplicialMap::identity(&i2)));
    let pt = build_spine(SpineKind::Delta, 0, None).unwrap();
    let two = BisimplicialSet::coproduct(&[pt.clone(), pt.clone()]);
    maps.push(("collapse".into(), copairing(&two, &pt, &[BisimplicialMap::identity(&pt), BisimplicialMap::identity(&pt)])));
    let (_, _, inc) = spine_inclusion(2, None).unwrap();
    maps.push(("spine2".into(), inc));
    ensure!(maps.len() >= 10, "only {} maps", maps.len());
    let mut inj = Vec::new();
    for (name, f) in &maps {
        let range = FamilyRange::new(GeneratorFamily::If, 1, 1);
        let r = injective_consequences(f, range, b()).ctx("consequences")?;
        let direct = has_rlp_bss(f, range, b()).ctx("rlp")?;
        ensure!(r.family.verdict.state == direct.verdict.state, "{name}: family verdicts differ");
        ensure!(r.consistent, "{name}: consequences inconsistent with the family check");
        if direct.verdict.is_yes() {
            ensure!(r.overall(b()).is_yes(), "{name}: injective but consequences fail");
        }
        if r.overall(b()).is_no() {
            ensure!(direct.verdict.is_no(), "{name}: a failed consequence must refute injectivity");
        }
        inj.push(json!([name, direct.verdict.state, r.overall(b()).state, direct.squares]));
    }
    Ok(json!({ "decompositions": rows, "injective": inj }))
}

fn generators(_: &Corpus) -> Outcome {
    let mut out = Vec::new();
    for m in 2..=3 {
        for n in 0..=2 {
            let p = p_object(m, n);
            let r = BisimplicialSet::product(&[BisimplicialSet::constant(&boundary(m).set), BisimplicialSet::transpose(&simplex(n))]).reduce();
            let w = 3;
            let iso = find_isomorphism(&p.set, &r, w, b()).ctx("isomorphism search")?.ok_or(format!("P({m},{n}) is not isomorphic to the reduced product"))?;
            iso.verify(w, b()).ctx("isomorphism")?;
            ensure!(iso.is_isomorphism(w, b()).unwrap(), "P({m},{n}) comparison is not bijective");
            let counts = p.set.rows(w, b()).unwrap().row_counts();
            ensure!(counts == r.rows(w, b()).unwrap().row_counts(), "row counts differ");
            out.push(json!([m, n, counts]));
        }
    }
    let r10 = reedy_reduction(1, 0);
    ensure!(!r10.is_injective(2, b()).unwrap(), "the reduced Reedy map at m = 1, n = 0 is injective");
    for m in 2..=3 {
        ensure!(reedy_reduction(m, 0).is_isomorphism(2, b()).unwrap(), "the reduced Reedy map at m = {m}, n = 0 is not an isomorphism");
    }
    for m in 1..=3 {
        ensure!(matches!(ic_generator(m, 0), Err(Error::InvalidParameter(_))), "Ic({m},0) should be excluded");
    }
    ensure!(ic_generator(0, 0).is_ok(), "Ic(0,0) is defined");
    Ok(json!({ "p_objects": out, "ic_degenerate": { "m1": "not mono", "m2": "iso", "m3": "iso" } }))
}

fn classification(c: &Corpus) -> Outcome {
    let mut segal = Vec::new();
    for (name, x) in c.nerves() {
        let r = segal_check(&x, 4, b()).ctx("segal check")?;
        ensure!(r.overall.is_yes(), "{name} fails the Segal check");
        for s in &r.steps {
            ensure!(s.source == s.target && matches!(s.verdict.certificate, Certificate::Isomorphism { .. }), "{name}: phi_{} is not a bijection", s.k);
        }
        segal.push(json!([name, r.steps.iter().map(|s| s.source).collect::<Vec<_>>()]));
    }
    let g2 = c.bss("G2");
    let r = segal_check(&g2, 2, b()).ctx("segal check")?;
    ensure!(r.overall.is_no(), "G2 passes the Segal check");
    ensure!((r.steps[0].source, r.steps[0].target) == (7, 8), "G2 witness is {} vs {}", r.steps[0].source, r.steps[0].target);

    let mut complete = Vec::new();
    for (name, x) in c.nerves() {
        let cat = c.cat(name.trim_start_matches("nerve_"));
        let expect = if name.starts_with("nerve_I") || name == "nerve_terminal" || name == "nerve_C1" || name.starts_with("nerve_discrete") {
            Some(true)
        } else if name == "nerve_iso" || (name.starts_with("nerve_C") && cat.num_objects() >= 2) {
            Some(false)
        } else {
            None
        };
        let v = complete_check(&x, b()).ctx("complete check")?;
        // oracle: complete iff the only isomorphisms are identities
        let oracle = (0..cat.num_arrows()).all(|a| cat.is_identity(a) || cat.inverse(a).is_none());
        ensure!(v.is_yes() == oracle && v.state != State::Unknown, "{name}: completeness {:?}, oracle {oracle}", v.state);
        if let Some(e) = expect {
            ensure!(v.is_yes() == e, "{name}: completeness {:?}", v.state);
        }
        complete.push(json!([name, v.state]));
    }
    let e = e_space().rows(3, b()).ctx("E rows")?;
    let stored = c.bss("E").rows(3, b()).ctx("E rows")?;
    let mut counts = Vec::new();
    for k in 0..=3 {
        // chains of length k in the codiscrete groupoid on two objects
        let oracle = 2usize.pow(k as u32 + 1);
        ensure!(e.rows[k].len() == oracle && stored.rows[k].len() == oracle, "E row {k} has {} points", e.rows[k].len());
        counts.push(e.rows[k].len());
    }
    Ok(json!({ "segal": segal, "g2": [7, 8], "complete": complete, "e_rows": counts }))
}

fn dk(c: &Corpus) -> Outcome {
    let mut functors: Vec<(String, Functor)> = c.cats.functors.clone();
    let (t, iso, i1, d2) = (c.cat("terminal"), c.cat("iso"), c.cat("I1"), c.cat("discrete2"));
    for (i, f) in enumerate_functors(&t, &iso, b()).ctx("functors")?.into_iter().enumerate() {
        functors.push((format!("terminal_to_iso_{i}"), f));
    }
    for (i, f) in enumerate_functors(&d2, &i1, b()).ctx("functors")?.into_iter().enumerate() {
        functors.push((format!("discrete2_to_I1_{i}"), f));
    }
    ensure!(functors.len() >= 10, "only {} functors", functors.len());
    let mut out = Vec::new();
    for (name, f) in &functors {
        let a = segalkit::segal::dk_check_segal(&nerve_of(f), b()).ctx("dk check")?;
        let e = cat_equiv_check(f, b());
        ensure!(a.state == e.state && a.state != State::Unknown, "{name}: DK {:?} vs equivalence {:?}", a.state, e.state);
        out.push(json!([name, a.state]));
    }
    ensure!(segalkit::segal::dk_check_segal(&nerve_of(&c.functor("iso_to_terminal")), b()).unwrap().is_yes(), "I[1] -> terminal");
    ensure!(segalkit::segal::dk_check_segal(&nerve_of(&c.functor("discrete2_to_terminal")), b()).unwrap().is_no(), "discrete2 -> terminal");

    let d2s = simplex(2);
    let u = |k: &Arc<SimplicialSet>| FiniteSimplicialCategory::u_functor(k, b()).map(Arc::new);
    let ud = u(&d2s).ctx("U")?;
    let h = horn(2, 1).unwrap();
    let yes = dk_check_sc(&SimplicialFunctor::u_map(&h.inclusion, &u(&h.set).ctx("U")?, &ud).ctx("U map")?, b()).ctx("dk sc")?;
    let bd = boundary(2);
    let no = dk_check_sc(&SimplicialFunctor::u_map(&bd.inclusion, &u(&bd.set).ctx("U")?, &ud).ctx("U map")?, b()).ctx("dk sc")?;
    ensure!(yes.is_yes(), "U(V[2,1]) -> U(D[2]) is {:?}", yes.state);
    ensure!(no.is_no(), "U(dD[2]) -> U(D[2]) is {:?}", no.state);
    let mut sc = vec![json!(["horn", yes.state]), json!(["boundary", no.state])];
    for (name, f) in &c.scats.sfunctors {
        sc.push(json!([name, dk_check_sc(f, b()).ctx("dk sc")?.state]));
    }
    Ok(json!({ "segal": out, "simplicial_categories": sc }))
}

/// Tuples of composable words in `e_i : x_{i-1} -> x_i` of total length at
/// most `k`, counted by brute force over paths.
fn word_oracle(x: &[usize], k: usize, m: usize) -> usize {
    let objs = x.iter().copied().max().unwrap_or(0) + 1;
    let edges: Vec<(usize, usize)> = x.windows(2).map(|p| (p[0], p[1])).collect();
    // paths[o][l]: endpoints of paths of length l from o
    let paths_from = |o: usize, l: usize| -> Vec<usize> {
        let mut cur = vec![o];
        for _ in 0..l {
            cur = cur.iter().flat_map(|&v| edges.iter().filter(move |e| e.0 == v).map(|e| e.1)).collect();
        }
        cur
    };
    fn go(at: usize, left: usize, steps: usize, paths_from: &dyn Fn(usize, usize) -> Vec<usize>) -> usize {
        if steps == 0 {
            return 1;
        }
        (0..=left).map(|l| paths_from(at, l).into_iter().map(|end| go(end, left - l, steps - 1, paths_from)).sum::<usize>()).sum()
    }
    (0..objs).map(|o| go(o, k, m, &paths_from)).sum()
}

fn is_linear_order(c: &FiniteCategory, n: usize) -> bool {
    if c.num_objects() != n + 1 {
        return false;
    }
    let ordered = |a: usize, b: usize| c.hom(a, b).len() == 1;
    (0..=n).all(|a| (0..=n).all(|b| c.hom(a, b).len() <= 1 && (a == b || ordered(a, b) != ordered(b, a))))
        && (0..=n).all(|a| (0..=n).all(|b| (0..=n).all(|d| !(ordered(a, b) && ordered(b, d)) || ordered(a, d))))
}

fn psi(_: &Corpus) -> Outcome {
    let tuples: [&[usize]; 6] = [&[0, 1, 2], &[0, 1, 1], &[0, 0, 0], &[1, 0, 1], &[0, 1, 2, 3], &[0, 1, 0, 1]];
    let mut counts = Vec::new();
    for x in tuples {
        let mut prev: Option<Vec<BTreeSet<_>>> = None;
        for k in 1..=3 {
            let t = psi_filtration(x, k).ctx("psi")?.rows(3, b()).ctx("rows")?;
            t.verify().ctx("simplicial identities")?;
            let mut stage = Vec::new();
            let mut sets = Vec::new();
            for m in 0..=3 {
                let oracle = word_oracle(x, k, m);
                ensure!(t.rows[m].len() == oracle, "psi_{k}{x:?} row {m}: {} vs oracle {oracle}", t.rows[m].len());
                stage.push(oracle);
                sets.push(psi_elements(x, k, m).into_iter().collect::<BTreeSet<_>>());
            }
            if let Some(p) = &prev {
                ensure!(p.iter().zip(&sets).all(|(a, s)| a.is_subset(s)), "psi_{}{x:?} is not contained in psi_{k}", k - 1);
            }
            prev = Some(sets);
            counts.push(json!([x, k, stage]));
        }
    }
    let mut tau = Vec::new();
    for n in 0..=3 {
        for kind in [SpineKind::G, SpineKind::Delta] {
            let x = build_spine(kind, n, None).ctx("spine")?;
            let p = tau1(&x, RewriteBound::default(), b()).ctx("tau1")?;
            let c = p.category().ok_or("undecided")?;
            ensure!(is_linear_order(c, n), "tau1 of {} is not [{n}]", x.name());
            ensure!(c.num_arrows() == (n + 1) * (n + 2) / 2, "tau1 of {} has {} arrows", x.name(), c.num_arrows());
            tau.push(json!([x.name(), c.num_arrows()]));
        }
    }
    Ok(json!({ "stages": counts, "tau1": tau }))
}

fn discretization(c: &Corpus) -> Outcome {
    let mut same = Vec::new();
    for (name, x) in &c.bss {
        let r = discretize(x, b()).ctx("discretize")?;
        ensure!(r.set.ptr_eq(x), "R({name}) is not {name}");
        same.push(name.clone());
    }
    let cd1 = BisimplicialSet::constant(&simplex(1));
    let r = discretize(&cd1, b()).ctx("discretize")?;
    let t = r.set.rows(3, b()).ctx("rows")?;
    ensure!(t.rows.iter().all(|row| row.is_discrete() && row.len() == 2), "R(c(D1)) rows are not two points");
    ensure!(find_isomorphism(&r.set, &vertices_t0(1), 3, b()).ctx("iso")?.is_some(), "R(c(D1)) is not doubly constant");

    let mut ws: Vec<BisimplicialSet> = non_discrete_objects();
    ws.push(BisimplicialSet::product(&[cd1.clone(), c.bss("nerve_I1")]).renamed("c(D1)xN(I1)"));
    ws.push(c.bss("nerve_iso"));
    let mut fibers = Vec::new();
    for w in &ws {
        let d = discretize(w, b()).ctx("discretize")?;
        d.map.verify(2, b()).ctx("RW -> W")?;
        let tw = w.rows(1, b()).ctx("rows")?;
        let m0 = d.map.row(0, b()).ctx("row 0")?;
        let m1 = d.map.row(1, b()).ctx("row 1")?;
        let rw0 = d.set.row(0, b()).ctx("row 0")?;
        for p in rw0.ids() {
            for q in rw0.ids() {
                let (x, y) = (m0.image(p).nd, m0.image(q).nd);
                // map_W(x, y): simplices of W_1 whose endpoints are the
                // degenerate x and y
                let row1 = &tw.rows[1];
                let oracle: BTreeSet<NdId> = row1
                    .ids()
                    .filter(|&s| {
                        let dim = row1.dim_of(s);
                        let (s0, s1) = (tw.vertex(1, 0).image(s), tw.vertex(1, 1).image(s));
                        s0 == tw.rows[0].degenerate_vertex(x, dim) && s1 == tw.rows[0].degenerate_vertex(y, dim)
                    })
                    .collect();
                let f = fiber(&d.set, &[p as usize, q as usize], b()).ctx("fiber")?;
                let to_w = f.inclusion.then(&m1);
                ensure!(to_w.is_injective(), "{}: fiber over ({x},{y}) is not embedded", w.name());
                let image: BTreeSet<NdId> = to_w.images().iter().filter(|s| s.word.is_empty()).map(|s| s.nd).collect();
                ensure!(image.len() == f.set.len() && image == oracle, "{}: map_RW({p},{q}) differs from map_W({x},{y})", w.name());
                fibers.push(json!([w.name(), p, q, f.set.counts()]));
            }
        }
    }
    Ok(json!({ "fixed": same, "fibers": fibers }))
}

fn phi(c: &Corpus) -> Outcome {
    let pt = build_spine(SpineKind::Delta, 0, None).unwrap();
    let two = BisimplicialSet::coproduct(&[pt.clone(), pt.clone()]);
    let collapse = copairing(&two, &pt, &[BisimplicialMap::identity(&pt), BisimplicialMap::identity(&pt)]);
    let (_, _, spine2) = spine_inclusion(2, None).unwrap();
    let maps: Vec<(String, BisimplicialMap)> = vec![
        ("collapse".into(), collapse),
        ("iso_to_terminal".into(), nerve_of(&c.functor("iso_to_terminal"))),
        ("I1_into_iso".into(), nerve_of(&c.functor("I1_into_iso"))),
        ("discrete2_to_terminal".into(), nerve_of(&c.functor("discrete2_to_terminal"))),
        ("spine2".into(), spine2),
    ];
    let w = 2;
    let mut out = Vec::new();
    for (name, f) in &maps {
        let p = phi_factorization(f, w, b()).ctx("phi")?;
        ensure!(p.check.is_yes(), "{name}: {:?}", p.check.state);
        let first = p.first.rows(w, b()).ctx("first")?;
        ensure!(first[0].is_isomorphism(), "{name}: row 0 of Phi is not the source objects");
        let comp = p.first.then(&p.second);
        ensure!(comp.key(w, b()).unwrap() == f.key(w, b()).unwrap(), "{name}: the factorization does not compose to f");
        let fr = f.rows(w, b()).ctx("rows")?;
        let tx = f.source.rows(w, b()).ctx("rows")?;
        for n in 0..=w {
            for v in vertex_tuples(&tx, n) {
                let pv: Vec<usize> = v.iter().map(|&o| first[0].image(o as NdId).nd as usize).collect();
                let fv: Vec<usize> = v.iter().map(|&o| fr[0].image(o as NdId).nd as usize).collect();
                let a = fiber_oracle(&p.set, &pv)?;
                let bset = fiber_oracle(&f.target, &fv)?;
                ensure!(a.counts() == bset.counts(), "{name}: fiber over {v:?} has {:?} vs {:?}", a.counts(), bset.counts());
            }
        }
        out.push(json!([name, p.set.rows(w, b()).unwrap().rows.iter().map(|r| r.len()).collect::<Vec<_>>()]));
    }
    let collapse_rows = p_rows(&maps[0].1, 3)?;
    ensure!(collapse_rows == vec![2, 4, 8, 16], "collapse rows {collapse_rows:?}");
    Ok(json!(out))
}

fn p_rows(f: &BisimplicialMap, w: usize) -> Result<Vec<usize>, String> {
    let p = phi_factorization(f, w, b()).ctx("phi")?;
    Ok(p.set.rows(w, b()).ctx("rows")?.rows.iter().map(|r| r.len()).collect())
}

fn invariants(c: &Corpus) -> Outcome {
    let mut hs = Vec::new();
    for n in 0..=4 {
        let d = simplex(n);
        let h = homology(&d, n, b()).ctx("homology")?;
        ensure!(h[0].rank == 1 && h[0].torsion.is_empty(), "H0(D{n})");
        ensure!(h[1..].iter().all(|g| g.rank == 0 && g.torsion.is_empty()), "D{n} has higher homology");
        let euler: i64 = d.counts().iter().enumerate().map(|(i, &k)| if i % 2 == 0 { k as i64 } else { -(k as i64) }).sum();
        ensure!(euler == 1, "chi(D{n}) = {euler}");
        if n >= 1 {
            let s = boundary(n).set;
            let h = homology(&s, n, b()).ctx("homology")?;
            for (d, g) in h.iter().enumerate() {
                let expect = match (n, d) {
                    (1, 0) => 2,
                    (_, 0) => 1,
                    (_, d) if d == n - 1 => 1,
                    _ => 0,
                };
                ensure!(g.rank == expect && g.torsion.is_empty(), "H{d}(dD{n}) has rank {}", g.rank);
            }
            let euler: i64 = s.counts().iter().enumerate().map(|(i, &k)| if i % 2 == 0 { k as i64 } else { -(k as i64) }).sum();
            let ranks: i64 = h.iter().enumerate().map(|(i, g)| if i % 2 == 0 { g.rank as i64 } else { -(g.rank as i64) }).sum();
            ensure!(euler == ranks, "Euler characteristic of dD{n}");
            hs.push(json!([n, h.iter().map(|g| g.rank).collect::<Vec<_>>()]));
        }
    }
    let mut kan = Vec::new();
    for (name, x) in &c.ssets {
        for d in 1..=2 {
            let k = is_kan(x, d, b());
            let r = has_rlp(&to_point(x), FamilyRange::new(GeneratorFamily::Horns, d, 0), b()).ctx("rlp")?;
            ensure!(k.state == r.verdict.state && k.state != State::Unknown, "{name}: is_kan {:?} vs rlp {:?}", k.state, r.verdict.state);
            kan.push(json!([name, d, k.state]));
        }
    }
    let ladder = [
        Budget { simplices: 4, dim: 1, nodes: 4 },
        Budget { simplices: 50, dim: 2, nodes: 1_000 },
        Budget { simplices: 1_000, dim: 4, nodes: 100_000 },
        b(),
    ];
    let mut we = Vec::new();
    let chosen = ["inc_dD0", "inc_dD1", "inc_dD2", "inc_dD3", "D1_to_point", "D2_to_point", "D3_to_point", "inc_V2_1", "inc_V3_0", "inc_V3_2"];
    let maps: Vec<&(String, SimplicialMap)> = c.smaps.iter().filter(|(n, _)| chosen.contains(&n.as_str())).collect();
    ensure!(maps.len() == chosen.len(), "missing corpus maps");
    let mut decided_late = 0;
    for (name, f) in maps {
        let verdicts: Vec<_> = ladder.iter().map(|&bud| we_verdict(f, bud)).collect();
        for v in &verdicts {
            ensure!(v.state == State::Unknown || verify_we(f, v), "{name}: certificate does not re-verify");
        }
        let states: Vec<State> = verdicts.iter().map(|v| v.state).collect();
        ensure!(states[3] != State::Unknown, "{name}: undecided at the default budget");
        for i in 1..states.len() {
            ensure!(states[i - 1] == State::Unknown || states[i - 1] == states[i], "{name}: verdict changed from {:?} to {:?}", states[i - 1], states[i]);
        }
        if states[0] == State::Unknown && states[3] != State::Unknown {
            decided_late += 1;
        }
        we.push(json!([name, states]));
    }
    ensure!(decided_late > 0, "no input exercised the budget ladder");
    Ok(json!({ "homology": hs, "kan": kan, "we": we, "decided_with_more_budget": decided_late }))
}

fn cli_reports(c: &Corpus) -> Result<Vec<Value>, String> {
    let root = c.root.display().to_string();
    let runs: Vec<Vec<String>> = vec![
        vec!["segal-check".into(), format!("{root}/nerve/nerve_I2.bss")],
        vec!["segal-check".into(), format!("{root}/spine/G2.bss")],
        vec!["complete-check".into(), format!("{root}/nerve/nerve_iso.bss")],
        vec!["homology".into(), format!("{root}/simplicial/dD3.sset")],
        vec!["we".into(), format!("{root}/simplicial/inc_V2_1.smap")],
        vec!["dk-segal".into(), format!("{root}/cat/categories.cat"), "iso_to_terminal".into()],
    ];
    let mut out = Vec::new();
    for args in runs {
        let argv = std::iter::once("segalkit".to_string()).chain(std::iter::once("--json".to_string())).chain(args.clone());
        let (_, report, _) = cli::run(argv);
        let r = report.ok_or(format!("no report for {args:?}"))?;
        out.push(r.deterministic_json());
    }
    Ok(out)
}

type Suite = fn(&Corpus) -> Outcome;

const SUITES: [(&str, Suite); 9] = [
    ("adjunctions", adjunctions),
    ("hom decompositions", decompositions),
    ("generators", generators),
    ("segal and completeness classification", classification),
    ("Dwyer-Kan equivalences", dk),
    ("psi filtration", psi),
    ("discretization", discretization),
    ("phi factorization", phi),
    ("invariant engine", invariants),
];

fn determinism(c: &Corpus, first: &[Option<Value>]) -> Outcome {
    for ((name, suite), prev) in SUITES.iter().zip(first) {
        let again = suite(c).ok();
        ensure!(prev.is_some() && &again == prev, "{name} report differs between runs");
    }
    let a = cli_reports(c)?;
    let b = cli_reports(c)?;
    ensure!(a == b, "command reports differ between runs");
    Ok(json!(a.len()))
}

macro_rules! say {
    ($($t:tt)*) => {{
        use std::io::Write;
        let _ = writeln!(std::io::stdout().lock(), $($t)*);
    }};
}

#[test]
fn acceptance() {
    let corpus = Corpus::load().expect("corpus");
    let mut failures = Vec::new();
    let mut reports = Vec::new();
    for (i, (name, suite)) in SUITES.iter().enumerate() {
        let t = std::time::Instant::now();
        let r = suite(&corpus);
        let secs = t.elapsed().as_secs_f64();
        match &r {
            Ok(v) => {
                say!("criterion {}: PASS  {name} ({secs:.1}s)", i + 1);
                if std::env::var_os("ACCEPTANCE_VERBOSE").is_some() {
                    say!("{v}");
                }
            }
            Err(e) => {
                say!("criterion {}: FAIL  {name}: {e}", i + 1);
                failures.push(i + 1);
            }
        }
        reports.push(r.ok());
    }
    match determinism(&corpus, &reports) {
        Ok(_) => say!("criterion 10: PASS  determinism"),
        Err(e) => {
            say!("criterion 10: FAIL  determinism: {e}");
            failures.push(10);
        }
    }
    assert!(failures.is_empty(), "failed criteria: {failures:?}");
}
