#include "halfflat/word.hpp"

#include "halfflat/errors.hpp"
#include "halfflat/surface.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace halfflat {

CurveWord CurveWord::parse(const std::string& text) {
    std::vector<Crossing> steps;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        std::string t;
        for (char ch : item)
            if (!std::isspace(static_cast<unsigned char>(ch))) t += ch;
        if (t.size() < 2 || (t[0] != '+' && t[0] != '-'))
            throw ParseError("curve word item '" + item + "' needs a sign and an edge id");
        for (std::size_t i = 1; i < t.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(t[i])))
                throw ParseError("curve word item '" + item + "' is not a signed integer");
        steps.push_back({std::stoi(t.substr(1)), t[0] == '+' ? 1 : -1});
    }
    return CurveWord(std::move(steps));
}

std::string CurveWord::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < steps_.size(); ++i) {
        if (i) out += ',';
        out += (steps_[i].sign > 0 ? '+' : '-') + std::to_string(steps_[i].gluing);
    }
    return out;
}

CurveWord CurveWord::inverse() const {
    std::vector<Crossing> out;
    for (auto it = steps_.rbegin(); it != steps_.rend(); ++it) out.push_back(it->inverse());
    return CurveWord(std::move(out));
}

CurveWord CurveWord::reduced() const {
    std::vector<Crossing> st;
    for (const Crossing& c : steps_) {
        if (!st.empty() && st.back() == c.inverse())
            st.pop_back();
        else
            st.push_back(c);
    }
    std::size_t lo = 0, hi = st.size();
    while (hi - lo >= 2 && st[lo] == st[hi - 1].inverse()) {
        ++lo;
        --hi;
    }
    return CurveWord(std::vector<Crossing>(st.begin() + static_cast<std::ptrdiff_t>(lo),
                                           st.begin() + static_cast<std::ptrdiff_t>(hi)));
}

CurveWord CurveWord::canonical() const {
    const CurveWord r = reduced();
    const std::size_t n = r.size();
    if (n == 0) return r;
    std::vector<Crossing> best = r.steps_;
    std::vector<Crossing> rot(n);
    for (std::size_t s = 1; s < n; ++s) {
        for (std::size_t i = 0; i < n; ++i) rot[i] = r.steps_[(s + i) % n];
        if (rot < best) best = rot;
    }
    return CurveWord(std::move(best));
}

CurveWord CurveWord::unoriented() const {
    return std::min(canonical(), inverse().canonical());
}

CurveWord CurveWord::power(int n) const {
    const CurveWord base = n < 0 ? inverse() : *this;
    std::vector<Crossing> out;
    for (int i = 0; i < std::abs(n); ++i) out.insert(out.end(), base.steps_.begin(), base.steps_.end());
    return CurveWord(std::move(out));
}

CurveWord CurveWord::operator*(const CurveWord& other) const {
    std::vector<Crossing> out = steps_;
    out.insert(out.end(), other.steps_.begin(), other.steps_.end());
    return CurveWord(std::move(out));
}

int exit_polygon(const HalfTranslationSurface& surface, Crossing c) {
    const Gluing& g = surface.gluings().at(c.gluing);
    return c.sign > 0 ? g.from.polygon : g.to.polygon;
}

int entry_polygon(const HalfTranslationSurface& surface, Crossing c) {
    const Gluing& g = surface.gluings().at(c.gluing);
    return c.sign > 0 ? g.to.polygon : g.from.polygon;
}

void CurveWord::check_coherent(const HalfTranslationSurface& surface) const {
    const int n = static_cast<int>(steps_.size());
    for (int i = 0; i < n; ++i) {
        const Crossing& c = steps_[i];
        if (c.gluing < 0 || c.gluing >= static_cast<int>(surface.gluings().size()) || (c.sign != 1 && c.sign != -1))
            throw IncoherentWord("crossing " + std::to_string(i) + " names no gluing");
    }
    for (int i = 0; i < n; ++i) {
        const Crossing& c = steps_[i];
        const Crossing& next = steps_[(i + 1) % n];
        if (entry_polygon(surface, c) != exit_polygon(surface, next))
            throw IncoherentWord("crossings " + std::to_string(i) + " and " + std::to_string((i + 1) % n) +
                                 " do not share a polygon");
    }
}

}  // namespace halfflat
