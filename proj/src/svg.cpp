#include "mobsync/svg.hpp"

#include "mobsync/continuum.hpp"

#include <algorithm>
#include <sstream>

namespace mobsync {

namespace {

struct Segment {
  Signal s;
  Rational t0, t1;
  Point p0, p1;
};

struct Live {
  Point at;
  Signal s;
  Rational t0;
  Point p0;
};

Rational kind_speed(const std::map<std::string, Rational>& speeds,
                    const Signal& s) {
  auto it = speeds.find(s.kind);
  return it == speeds.end() ? Rational(0) : it->second;
}

// Replays the run to recover every signal's lifetime as a segment.
std::vector<Segment> replay(const Multigraph& g,
                            const std::map<std::string, Rational>& speeds,
                            const Configuration& initial,
                            const std::vector<EventBatch>& batches,
                            const Rational& final_time) {
  std::vector<Segment> done;
  std::vector<Live> live;
  for (const auto& [p, set] : initial)
    for (const Signal& s : set) live.push_back({p, s, 0, p});
  Rational now = 0;
  auto advance_all = [&](const Rational& to) {
    Rational dt = to - now;
    if (dt == 0) return;
    for (Live& l : live) {
      Rational v = kind_speed(speeds, l.s);
      if (v != 0 && l.s.dir) l.at = advance(g, l.at, *l.s.dir, v * dt);
    }
    now = to;
  };
  for (const EventBatch& b : batches) {
    advance_all(b.time);
    for (const EventEntry& e : b.entries) {
      for (const Signal& s : e.consumed) {
        auto it = std::find_if(live.begin(), live.end(), [&](const Live& l) {
          return l.at == e.point && l.s == s;
        });
        if (it == live.end()) continue;  // tolerate foreign traces
        done.push_back({it->s, it->t0, b.time, it->p0, e.point});
        live.erase(it);
      }
      for (const Signal& s : e.produced) live.push_back({e.point, s, b.time, e.point});
    }
  }
  advance_all(final_time);
  for (const Live& l : live) done.push_back({l.s, l.t0, final_time, l.p0, l.at});
  return done;
}

struct Style {
  const char* color;
  double width;
  const char* dash;  // nullptr for solid
};

Style style_for(const Signal& s) {
  const std::string& k = s.kind;
  if (k == "I") return {"#000000", 1.6, nullptr};
  if (k == "U") return {"#1565c0", 1.0, "2 3"};
  if (k == "RU") return {"#1565c0", 1.5, "2 3"};
  if (k == "V") return {"#00838f", 1.3, nullptr};
  if (k == "F") return {"#757575", 1.3, "7 4"};
  if (k == "T") return {"#c62828", 2.0, s.flag ? nullptr : "2 5"};
  if (k == "RD") return {"#ef6c00", 1.5, "2 3"};
  if (k == "B") return {"#4a148c", 2.6, nullptr};
  if (k == "M") return {"#2e7d32", 2.6, nullptr};
  if (k == "X") return {"#d32f2f", 2.2, nullptr};
  if (k == "L") return {"#37474f", 2.0, "1 3"};
  if (k == "C") return {"#9e9e9e", 1.0, "1 3"};
  if (!k.empty() && k[0] == 'F') return {"#9e9e9e", 1.6, "7 4"};  // frozen
  return {"#ef6c00", 1.3, nullptr};  // divide family
}

double dbl(const Rational& r) { return r.get_d(); }

std::string esc(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '&') out += "&amp;";
    else if (c == '<') out += "&lt;";
    else if (c == '>') out += "&gt;";
    else out += c;
  }
  return out;
}

}  // namespace

std::string render_svg(const Multigraph& g,
                       const std::map<std::string, Rational>& speeds,
                       const Configuration& initial,
                       const std::vector<EventBatch>& batches,
                       const Rational& final_time, const SvgOptions& opt) {
  std::vector<EdgeId> draw;
  if (opt.edges.empty()) {
    for (EdgeId e = 0; e < static_cast<EdgeId>(g.edge_count()); ++e)
      draw.push_back(e);
  } else {
    for (const std::string& name : opt.edges) draw.push_back(g.edge_index(name));
  }
  std::vector<Segment> segs = replay(g, speeds, initial, batches, final_time);

  const double margin_left = 60, margin_right = 30, margin_top = 44,
               gap = 54, axis_extra = 26;
  double t_span = std::max(1.0, dbl(final_time));
  double panel_h = t_span * opt.height_per_unit;
  double total_w = 0;
  for (EdgeId e : draw)
    total_w = std::max(total_w, dbl(g.edge(e).weight) * opt.width_per_unit);
  double width = margin_left + total_w + margin_right;
  double height = margin_top;
  std::vector<double> panel_top(draw.size());
  for (std::size_t i = 0; i < draw.size(); ++i) {
    panel_top[i] = height;
    height += panel_h + gap + axis_extra;
  }

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " "
      << height << "\" font-family=\"sans-serif\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"#fcfcfa\"/>\n";

  for (std::size_t i = 0; i < draw.size(); ++i) {
    EdgeId e = draw[i];
    const Edge& ed = g.edge(e);
    double top = panel_top[i];
    double w = dbl(ed.weight) * opt.width_per_unit;
    auto X = [&](const Rational& off) {
      return margin_left + dbl(off) / dbl(ed.weight) * w;
    };
    auto Y = [&](const Rational& t) {
      return top + dbl(t) / t_span * panel_h;
    };
    out << "<g>\n";
    out << "<text x=\"" << margin_left << "\" y=\"" << top - 22
        << "\" font-size=\"13\" font-weight=\"bold\">edge " << esc(ed.name)
        << "  (" << esc(g.vertex_name(ed.a)) << " to "
        << esc(g.vertex_name(ed.b)) << ", weight " << to_string(ed.weight)
        << ")</text>\n";
    // frame and time grid
    out << "<rect x=\"" << margin_left << "\" y=\"" << top << "\" width=\""
        << w << "\" height=\"" << panel_h
        << "\" fill=\"none\" stroke=\"#bbb\"/>\n";
    for (long t = 0; t <= static_cast<long>(t_span); ++t) {
      double y = top + t / t_span * panel_h;
      out << "<line x1=\"" << margin_left << "\" y1=\"" << y << "\" x2=\""
          << margin_left + w << "\" y2=\"" << y
          << "\" stroke=\"#e7e7e2\" stroke-width=\"0.6\"/>\n";
      out << "<text x=\"" << margin_left - 8 << "\" y=\"" << y + 4
          << "\" font-size=\"10\" text-anchor=\"end\">" << t << "</text>\n";
    }
    out << "<text x=\"" << margin_left << "\" y=\"" << top + panel_h + 16
        << "\" font-size=\"10\">" << esc(g.vertex_name(ed.a)) << "</text>\n";
    out << "<text x=\"" << margin_left + w << "\" y=\"" << top + panel_h + 16
        << "\" font-size=\"10\" text-anchor=\"end\">"
        << esc(g.vertex_name(ed.b)) << "</text>\n";

    auto offset_on = [&](const Point& p) -> std::optional<Rational> {
      if (p.is_vertex()) {
        if (p.vertex == ed.a) return Rational(0);
        if (p.vertex == ed.b) return ed.weight;
        return std::nullopt;
      }
      if (p.edge == e) return p.offset;
      return std::nullopt;
    };
    for (const Segment& s : segs) {
      // A segment belongs to this panel when both ends sit on the edge
      // (vertex endpoints count) and, for movers, it travels this edge.
      auto o0 = offset_on(s.p0);
      auto o1 = offset_on(s.p1);
      if (!o0 || !o1) continue;
      bool mover = kind_speed(speeds, s.s) != 0 && s.s.dir;
      if (mover && s.t1 != s.t0 && s.s.dir->edge != e) continue;
      if (!mover && s.p0.is_vertex()) continue;  // parked at a vertex: skip
      Style st = style_for(s.s);
      out << "<line x1=\"" << X(*o0) << "\" y1=\"" << Y(s.t0) << "\" x2=\""
          << X(*o1) << "\" y2=\"" << Y(s.t1) << "\" stroke=\"" << st.color
          << "\" stroke-width=\"" << st.width << "\"";
      if (st.dash) out << " stroke-dasharray=\"" << st.dash << "\"";
      out << "><title>" << esc(s.s.kind) << " [" << to_string(s.t0) << ", "
          << to_string(s.t1) << "]</title></line>\n";
      if (s.s.kind == "X" || s.s.kind == "B" || s.s.kind == "M" ||
          s.s.kind == "L") {
        out << "<circle cx=\"" << X(*o0) << "\" cy=\"" << Y(s.t0)
            << "\" r=\"2.6\" fill=\"" << st.color << "\"/>\n";
        out << "<text x=\"" << X(*o0) + 4 << "\" y=\"" << Y(s.t0) - 3
            << "\" font-size=\"9\" fill=\"" << st.color << "\">"
            << esc(s.s.kind) << "</text>\n";
      }
    }
    // Vertex-parked signals: short ticks on the border they belong to.
    for (const Segment& s : segs) {
      if (!(s.p0.is_vertex() && kind_speed(speeds, s.s) == 0)) continue;
      std::optional<Rational> o = offset_on(s.p0);
      if (!o) continue;
      Style st = style_for(s.s);
      out << "<line x1=\"" << X(*o) << "\" y1=\"" << Y(s.t0) << "\" x2=\""
          << X(*o) << "\" y2=\"" << Y(s.t1) << "\" stroke=\"" << st.color
          << "\" stroke-width=\"" << st.width
          << "\" stroke-dasharray=\"1 3\"><title>" << esc(s.s.kind) << " at "
          << esc(g.vertex_name(s.p0.vertex)) << " [" << to_string(s.t0)
          << ", " << to_string(s.t1) << "]</title></line>\n";
      if (s.s.kind == "X") {
        out << "<circle cx=\"" << X(*o) << "\" cy=\"" << Y(s.t0)
            << "\" r=\"3.2\" fill=\"" << st.color << "\"/>\n";
      }
    }
    out << "</g>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace mobsync
