//! Property-space snapshots of the search as standalone SVG files.
//!
//! Each contraction, branch, and discard becomes one image projected onto
//! the two variables of a two-property catalog: catalog items as numbered
//! dots (gray once they fall outside the current box), the box before the
//! step in black, the box after in red, and branch children in green.

use crate::boxes::IntervalBox;
use crate::interval::Interval;
use crate::problem::Problem;
use crate::trace::{After, Phase, TraceEvent};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

const WIDTH: f64 = 480.0;
const HEIGHT: f64 = 520.0;
const LEFT: f64 = 46.0;
const TOP: f64 = 28.0;
const PLOT_W: f64 = 414.0;
const PLOT_H: f64 = 440.0;

pub struct Plotter {
    dir: PathBuf,
    /// Variable indices of the plotted axes.
    xi: usize,
    yi: usize,
    x_dom: Interval,
    y_dom: Interval,
    items: Vec<(f64, f64)>,
    names: (String, String),
    seq: usize,
}

impl Plotter {
    /// Prepares plotting against the first catalog bound to exactly two
    /// variables. Returns `Ok(None)` when no catalog qualifies.
    pub fn new(problem: &Problem, dir: &Path) -> std::io::Result<Option<Plotter>> {
        let Some(binding) = problem.catalogs.iter().find(|b| b.vars.len() == 2) else {
            return Ok(None);
        };
        std::fs::create_dir_all(dir)?;
        let (xi, yi) = (binding.vars[0], binding.vars[1]);
        let items = (0..binding.catalog.len())
            .map(|i| {
                let row = binding.catalog.item(i);
                (row[0], row[1])
            })
            .collect();
        Ok(Some(Plotter {
            dir: dir.to_path_buf(),
            xi,
            yi,
            x_dom: problem.domains.comp(xi),
            y_dom: problem.domains.comp(yi),
            items,
            names: (
                problem.var_names[xi].clone(),
                problem.var_names[yi].clone(),
            ),
            seq: 0,
        }))
    }

    /// Writes the image for one event; bound and extraction events carry no
    /// geometry change and are skipped.
    pub fn record(&mut self, event: &TraceEvent, var_names: &[String]) -> std::io::Result<()> {
        let (title, slug) = match &event.phase {
            Phase::Extract | Phase::LowerBound | Phase::UpperBound => return Ok(()),
            Phase::Hc4(k) => (format!("HC4(c{k})"), format!("hc4-c{k}")),
            Phase::Clutch(k) => (format!("CLUTCH(c{k})"), format!("clutch-c{k}")),
            Phase::ObjCut => ("OBJ-CUT".to_string(), "objcut".to_string()),
            Phase::Branch(v) => {
                let name = &var_names[*v];
                (format!("BRANCH({name})"), format!("branch-{name}"))
            }
            Phase::Discard(cause) => (
                format!("DISCARD({})", cause.label()),
                format!("discard-{}", cause.label()),
            ),
        };
        self.seq += 1;
        let file = self
            .dir
            .join(format!("{:03}-n{}-{}.svg", self.seq, event.node, slug));
        let svg = self.render(event, &format!("n{} {}", event.node, title));
        std::fs::write(file, svg)
    }

    fn sx(&self, x: f64) -> f64 {
        LEFT + frac(x, self.x_dom) * PLOT_W
    }

    fn sy(&self, y: f64) -> f64 {
        TOP + (1.0 - frac(y, self.y_dom)) * PLOT_H
    }

    fn rect(&self, out: &mut String, b: &IntervalBox, color: &str, width: f64) {
        if b.is_empty() {
            return;
        }
        let (x, y) = (b.comp(self.xi), b.comp(self.yi));
        let (px, py) = (self.sx(x.lo()), self.sy(y.hi()));
        let w = (self.sx(x.hi()) - px).max(2.0);
        let h = (self.sy(y.lo()) - py).max(2.0);
        let _ = writeln!(
            out,
            "<rect x=\"{px:.1}\" y=\"{py:.1}\" width=\"{w:.1}\" height=\"{h:.1}\" \
             fill=\"none\" stroke=\"{color}\" stroke-width=\"{width}\"/>"
        );
    }

    fn render(&self, event: &TraceEvent, title: &str) -> String {
        let mut s = String::new();
        let _ = write!(
            s,
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" \
             viewBox=\"0 0 {WIDTH} {HEIGHT}\" font-family=\"monospace\">\n\
             <rect width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"white\"/>\n\
             <text x=\"{:.1}\" y=\"19\" text-anchor=\"middle\" font-size=\"14\" fill=\"#111\">{title}</text>\n\
             <rect x=\"{LEFT}\" y=\"{TOP}\" width=\"{PLOT_W}\" height=\"{PLOT_H}\" \
             fill=\"none\" stroke=\"#999\"/>\n\
             <text x=\"{:.1}\" y=\"{:.1}\" text-anchor=\"middle\" font-size=\"13\" fill=\"#333\">{}</text>\n\
             <text x=\"14\" y=\"{:.1}\" text-anchor=\"middle\" font-size=\"13\" fill=\"#333\" \
             transform=\"rotate(-90 14 {:.1})\">{}</text>\n",
            LEFT + PLOT_W / 2.0,
            LEFT + PLOT_W / 2.0,
            TOP + PLOT_H + 26.0,
            self.names.0,
            TOP + PLOT_H / 2.0,
            TOP + PLOT_H / 2.0,
            self.names.1,
        );

        // the box items are judged against: where the step left them
        let current = match &event.after {
            After::One(b) => b.clone(),
            After::Two(_, _) => event.before.clone(),
        };
        for (i, &(x, y)) in self.items.iter().enumerate() {
            let inside = !current.is_empty()
                && current.comp(self.xi).contains(x)
                && current.comp(self.yi).contains(y);
            let fill = if inside { "#222" } else { "#bbb" };
            let (px, py) = (self.sx(x), self.sy(y));
            let _ = write!(
                s,
                "<circle cx=\"{px:.1}\" cy=\"{py:.1}\" r=\"4\" fill=\"{fill}\"/>\n\
                 <text x=\"{:.1}\" y=\"{:.1}\" font-size=\"11\" fill=\"{fill}\">{}</text>\n",
                px + 6.0,
                py - 5.0,
                i + 1
            );
        }

        self.rect(&mut s, &event.before, "#222", 1.5);
        match &event.after {
            After::One(b) => self.rect(&mut s, b, "#d22", 2.0),
            After::Two(lower, upper) => {
                self.rect(&mut s, lower, "#2a2", 2.0);
                self.rect(&mut s, upper, "#2a2", 2.0);
            }
        }
        if let Phase::Discard(cause) = &event.phase {
            let _ = writeln!(
                s,
                "<text x=\"{:.1}\" y=\"{:.1}\" text-anchor=\"middle\" font-size=\"16\" \
                 fill=\"#d22\">discarded ({})</text>",
                LEFT + PLOT_W / 2.0,
                TOP + PLOT_H / 2.0,
                cause.label()
            );
        }
        s.push_str("</svg>\n");
        s
    }
}

/// Position of `v` within `dom` as a 0..1 fraction; point domains center.
fn frac(v: f64, dom: Interval) -> f64 {
    let w = dom.hi() - dom.lo();
    if w <= 0.0 {
        return 0.5;
    }
    ((v - dom.lo()) / w).clamp(0.0, 1.0)
}
