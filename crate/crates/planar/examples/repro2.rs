use planar::embedding::EmbeddedGraph;
use planar::flip_search::FlipEngine;
use planar::ids::VertexId;
use planar::static_oracle::{is_planar_static, EdgeListGraph};
use planar::treecotree::{Backend, TreeCotreeIndex};

fn main() {
    let text = "0: 0>9#0 0>10#0 0>11#0\n1: 1>6#0 1>12#0 1>10#0\n2: 2>6#0 2>14#0 2>7#0 2>10#0\n3:\n4: 4>14#0\n5: 5>13#0\n6: 6>1#0 6>13#0 6>2#0\n7: 7>2#0 7>13#0\n8: 8>9#0 8>13#0\n9: 9>0#0 9>13#0 9>8#0\n10: 10>0#0 10>1#0 10>2#0\n11: 11>0#0 11>13#0\n12: 12>1#0\n13: 13>5#0 13>9#0 13>11#0 13>7#0 13>6#0 13>8#0\n14: 14>2#0 14>4#0\n15:\n";
    let mut g = EmbeddedGraph::parse(text).unwrap();
    let edges: Vec<(u32, u32)> = {
        let ids: Vec<_> = g.edge_ids().collect();
        ids.iter()
            .map(|&e| {
                let (a, b) = g.endpoints(e).unwrap();
                (a.0, b.0)
            })
            .collect()
    };
    let el = EdgeListGraph::new(16, edges).unwrap();
    println!("static insertable: {}", is_planar_static(&el.with_edge(7, 9)));
    let idx = TreeCotreeIndex::build(&mut g, Backend::Reference).unwrap();
    let (u, v) = (VertexId(7), VertexId(9));
    let mut eng = FlipEngine::new(&mut g, &idx, 1000, true);
    println!("linkable now: {:?}", eng.idx.linkable(eng.g, u, v));
    let cands = eng.find_single_flip_candidates(u, v).unwrap();
    for c in &cands {
        println!("cand f_u={:?} f_v={:?} C={:?} e_u={:?} e_v={:?}", c.f_u, c.f_v, c.cycle, c.e_u, c.e_v);
        let mut e2 = FlipEngine::new(eng.g, &idx, 1000, true);
        let has_v = e2.g.face_has_vertex(c.f_v, v);
        println!("  v in f_v: {}", has_v);
        if has_v {
            let r = e2.choose_best_flip(u, v, c.f_u, c.f_v);
            println!("  choose_best: size={} sigma={:?}", r.size, r.sigma.is_some());
        }
    }
    let r = eng.find_first_separation_flip(u, v).unwrap();
    println!("find_first: size={}", r.size);
    // what should happen: enumerate valid u-flips by brute force
    for s in 0..16u32 {
        for t in s + 1..16 {
            let (s, t) = (VertexId(s), VertexId(t));
            if u == s || u == t || v == s || v == t {
                continue;
            }
            if eng.g.some_dart_at(s).is_none() || eng.g.some_dart_at(t).is_none() {
                continue;
            }
            if !eng.g.same_component(s, u) || !eng.g.same_component(t, u) {
                continue;
            }
            let rot = eng.g.rotation_of(s);
            let deg = rot.len();
            for i in 0..deg {
                for len in 1..deg {
                    let first = rot[i];
                    let after = rot[(i + len) % deg];
                    let Ok(sig) = eng.g.sigma_for_cut(s, t, first, after) else { continue };
                    let Ok(cut) = eng.g.separation_cut(&sig) else { continue };
                    let ui = cut.interior.contains(&u);
                    let vi = cut.interior.contains(&v);
                    if ui == vi {
                        continue;
                    }
                    // u-flip: check faces: u on one cut face, not the other
                    let fu = eng.g.corner_face(sig[0]).unwrap();
                    let fv = eng.g.corner_face(sig[3]).unwrap();
                    let u_on = eng.g.face_has_vertex(fu, u) as i32 + eng.g.face_has_vertex(fv, u) as i32;
                    println!(
                        "  u-flip at ({},{}) side_interior={:?} faces u_on={} locmax={}",
                        s.0,
                        t.0,
                        cut.interior,
                        u_on,
                        eng.is_locally_maximal(&sig, u, v)
                    );
                }
            }
        }
    }
}
