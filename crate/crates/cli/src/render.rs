//! Renders a window `[0, cols] x [0, rows]` of the peripheral complex.
//!
//! Edges point from even vertices (sources, drawn hollow) to odd vertices
//! (sinks, drawn filled). A walked path can be overlaid.

use std::fmt::Write;

use serde_json::{json, Value};

use knotperi_core::peripheral::{Direction, PeripheralComplex, Vertex};

fn even(x: i64, y: i64) -> bool {
    (x + y).rem_euclid(2) == 0
}

fn label(c: &PeripheralComplex, v: Vertex, dir: Direction) -> u32 {
    c.edge_letter(v, dir).generator.0
}

pub fn text(c: &PeripheralComplex, rows: i64, cols: i64) -> String {
    const W: usize = 8;
    let mut out = String::new();
    for y in (0..=rows).rev() {
        let mut line = format!("{y:>3} ");
        for x in 0..=cols {
            line.push(if even(x, y) { 'o' } else { '*' });
            if x < cols {
                let g = label(c, (x, y), Direction::Right);
                let edge = if even(x, y) { format!("-X{g}->") } else { format!("<-X{g}-") };
                let _ = write!(line, "{edge:-^w$}", w = W - 1);
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
        if y > 0 {
            let mut cells = String::from("    ");
            for x in 0..=cols {
                let g = label(c, (x, y - 1), Direction::Up);
                let arrow = if even(x, y - 1) { '^' } else { 'v' };
                let v = format!("{arrow}X{g}");
                if x < cols {
                    let p = format!("P{}", c.square_at(x, y - 1).visit);
                    let _ = write!(cells, "{v:<4}{p:<w$}", w = W - 4);
                } else {
                    cells.push_str(&v);
                }
            }
            out.push_str(cells.trim_end());
            out.push('\n');
        }
    }
    let mut axis = String::from("    ");
    for x in 0..=cols {
        let _ = write!(axis, "{x:<W$}");
    }
    out.push_str(axis.trim_end());
    out.push('\n');
    out
}

pub fn svg(c: &PeripheralComplex, rows: i64, cols: i64, path: Option<&[Vertex]>) -> String {
    const S: i64 = 80;
    const M: i64 = 40;
    let px = |(x, y): Vertex| (M + x * S, M + (rows - y) * S);
    let (w, h) = (2 * M + cols * S, 2 * M + rows * S);
    let mut s = String::new();
    let _ = writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}" font-family="sans-serif" font-size="13">"#);
    s.push_str(concat!(
        r#"<defs><marker id="arrow" viewBox="0 0 10 10" refX="9" refY="5" markerWidth="7" markerHeight="7" orient="auto-start-reverse">"#,
        r##"<path d="M0,0 L10,5 L0,10 z" fill="#333"/></marker></defs>"##,
        "\n"
    ));
    for y in 0..rows {
        for x in 0..cols {
            let (cx, cy) = px((x, y));
            let _ = writeln!(
                s,
                r##"<text x="{}" y="{}" text-anchor="middle" fill="#aaa">P{}</text>"##,
                cx + S / 2,
                cy - S / 2 + 5,
                c.square_at(x, y).visit
            );
        }
    }
    let mut edge = |from: Vertex, dir: Direction| {
        let step = dir.step();
        let to = (from.0 + step.0, from.1 + step.1);
        let g = label(c, from, dir);
        // Arrow from the even end to the odd end, stopping short of the vertex.
        let (a, b) = if even(from.0, from.1) { (px(from), px(to)) } else { (px(to), px(from)) };
        let (dx, dy) = ((b.0 - a.0).signum() * 8, (b.1 - a.1).signum() * 8);
        let _ = writeln!(
            s,
            r##"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="#333" stroke-width="1.5" marker-end="url(#arrow)"/>"##,
            a.0 + dx,
            a.1 + dy,
            b.0 - dx,
            b.1 - dy
        );
        let (mx, my) = ((a.0 + b.0) / 2, (a.1 + b.1) / 2);
        let (tx, ty) = if step.1 == 0 { (mx, my - 6) } else { (mx + 6, my + 4) };
        let anchor = if step.1 == 0 { "middle" } else { "start" };
        let _ = writeln!(s, r#"<text x="{tx}" y="{ty}" text-anchor="{anchor}">{g}</text>"#);
    };
    for y in 0..=rows {
        for x in 0..=cols {
            if x < cols {
                edge((x, y), Direction::Right);
            }
            if y < rows {
                edge((x, y), Direction::Up);
            }
        }
    }
    if let Some(path) = path {
        let pts: Vec<String> = path.iter().map(|&v| { let (x, y) = px(v); format!("{x},{y}") }).collect();
        let _ = writeln!(
            s,
            r##"<polyline points="{}" fill="none" stroke="#d22" stroke-width="3" stroke-opacity="0.7"/>"##,
            pts.join(" ")
        );
    }
    for y in 0..=rows {
        for x in 0..=cols {
            let (cx, cy) = px((x, y));
            let fill = if even(x, y) { "#fff" } else { "#000" };
            let _ = writeln!(s, r##"<circle cx="{cx}" cy="{cy}" r="4" fill="{fill}" stroke="#000"/>"##);
        }
    }
    s.push_str("</svg>\n");
    s
}

pub fn json(c: &PeripheralComplex, rows: i64, cols: i64, path: Option<&[Vertex]>) -> Value {
    let mut cells = Vec::new();
    for y in 0..rows {
        for x in 0..cols {
            let sq = c.square_at(x, y);
            cells.push(json!({
                "x": x, "y": y, "visit": sq.visit,
                "bottom": sq.bottom, "top": sq.top, "left": sq.left, "right": sq.right,
            }));
        }
    }
    json!({
        "rows": rows,
        "cols": cols,
        "period": c.period(),
        "cells": cells,
        "path": path.map(|p| p.iter().map(|&(x, y)| [x, y]).collect::<Vec<_>>()),
    })
}
