#pragma once

// Open dynamical systems and the gray-boxing of open Petri nets with rates.
//
// An OpenDynam is a decorated cospan for the vector-field theory, so
// composition reuses compose_h: pushout of the place sets, then the two
// fields are pushed forward along the pushout injections and added.

#include <cmath>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cospan.hpp"

namespace opencospan
{

using OpenDynam = DecoratedCospan<DynamicalDecoration>;
using OpenRatedPetri = DecoratedCospan<RatedPetriTheory>;

// v(c) = Σ_τ r(τ) (t(τ) − s(τ)) c^{s(τ)}
inline PolyVectorField mass_action(const PetriNetWithRates &p)
{
    const auto n = p.vertex_count();
    std::vector<std::vector<Term>> terms(n);
    for (std::size_t tr = 0; tr < p.edge_count(); ++tr) {
        const auto &s = p.net.src[tr].counts;
        const auto &t = p.net.tgt[tr].counts;
        for (std::size_t place = 0; place < n; ++place) {
            auto net_change = static_cast<double>(t[place]) - static_cast<double>(s[place]);
            if (net_change != 0.0) {
                terms[place].push_back({p.rates[tr] * net_change, s});
            }
        }
    }
    std::vector<Polynomial> comps;
    comps.reserve(n);
    for (auto &ts : terms) {
        comps.emplace_back(n, std::move(ts));
    }
    return PolyVectorField(n, std::move(comps));
}

inline OpenDynam graybox(const OpenRatedPetri &m)
{
    return OpenDynam(m.left_leg, m.right_leg, mass_action(m.decoration));
}

inline OpenDynam compose_open_dynam(const OpenDynam &m, const OpenDynam &n)
{
    return compose_h(m, n);
}

// True iff there is a morphism (∅, v_∅) -> (S, v) in ∫D, i.e. iff pushing
// the empty field forward along ∅ -> S gives v. Only the zero field passes,
// which is why the forgetful functor out of ∫D has no left adjoint.
inline bool check_no_left_adjoint_witness(const PolyVectorField &v)
{
    auto from_empty = pushforward_field(FinFunction::initial(v.size()), PolyVectorField::zero(0));
    return approx_equal(from_empty, v);
}

// A right-continuous step function: value 0 before the first breakpoint,
// then the value of the latest breakpoint at or before t.
class PiecewiseConstant
{
public:
    PiecewiseConstant() = default;
    explicit PiecewiseConstant(std::vector<std::pair<double, double>> breakpoints) : m_points(std::move(breakpoints))
    {
        for (std::size_t k = 0; k < m_points.size(); ++k) {
            if (!std::isfinite(m_points[k].first) || !std::isfinite(m_points[k].second)) {
                throw InvalidSystem("flow breakpoint " + std::to_string(k) + " is not finite");
            }
            if (k > 0 && !(m_points[k].first > m_points[k - 1].first)) {
                throw InvalidSystem("flow breakpoints must be strictly increasing (index " + std::to_string(k) + ")");
            }
        }
    }
    static PiecewiseConstant constant(double value, double from = -std::numeric_limits<double>::max())
    {
        return PiecewiseConstant({{from, value}});
    }

    double operator()(double t) const
    {
        double v = 0.0;
        for (const auto &[tk, vk] : m_points) {
            if (tk > t) {
                break;
            }
            v = vk;
        }
        return v;
    }
    const std::vector<std::pair<double, double>> &breakpoints() const
    {
        return m_points;
    }

private:
    std::vector<std::pair<double, double>> m_points;
};

struct FlowSchedule {
    std::vector<PiecewiseConstant> inflows;  // one per element of the left foot
    std::vector<PiecewiseConstant> outflows; // one per element of the right foot

    static FlowSchedule zero(const OpenDynam &sys)
    {
        return {std::vector<PiecewiseConstant>(sys.foot_left().size),
                std::vector<PiecewiseConstant>(sys.foot_right().size)};
    }
};

// dc/dt = v(c) + i_*(I(t)) − o_*(O(t)), with the flows supplied as callables
// returning one value per foot element.
template <class Inflow, class Outflow>
std::vector<double> open_rate_rhs(const OpenDynam &sys, Inflow &&inflow, Outflow &&outflow, double t,
                                  std::span<const double> c)
{
    if (c.size() != sys.apex().size) {
        throw DimensionError("state has " + std::to_string(c.size()) + " coordinates, system has "
                             + std::to_string(sys.apex().size) + " places");
    }
    auto dc = sys.decoration.evaluate(c);
    const std::vector<double> in = inflow(t);
    const std::vector<double> out = outflow(t);
    if (in.size() != sys.foot_left().size || out.size() != sys.foot_right().size) {
        throw DimensionError("flow vectors have " + std::to_string(in.size()) + " and " + std::to_string(out.size())
                             + " entries, feet have " + std::to_string(sys.foot_left().size) + " and "
                             + std::to_string(sys.foot_right().size));
    }
    for (std::size_t x = 0; x < in.size(); ++x) {
        dc[sys.left_leg(x)] += in[x];
    }
    for (std::size_t y = 0; y < out.size(); ++y) {
        dc[sys.right_leg(y)] -= out[y];
    }
    return dc;
}

inline std::vector<double> evaluate_flows(const std::vector<PiecewiseConstant> &flows, double t)
{
    std::vector<double> v(flows.size());
    for (std::size_t k = 0; k < flows.size(); ++k) {
        v[k] = flows[k](t);
    }
    return v;
}

inline std::vector<double> open_rate_rhs(const OpenDynam &sys, const FlowSchedule &sched, double t,
                                         std::span<const double> c)
{
    if (sched.inflows.size() != sys.foot_left().size || sched.outflows.size() != sys.foot_right().size) {
        throw DimensionError("schedule has " + std::to_string(sched.inflows.size()) + " inflows and "
                             + std::to_string(sched.outflows.size()) + " outflows, feet have "
                             + std::to_string(sys.foot_left().size) + " and " + std::to_string(sys.foot_right().size));
    }
    return open_rate_rhs(
        sys, [&](double s) { return evaluate_flows(sched.inflows, s); },
        [&](double s) { return evaluate_flows(sched.outflows, s); }, t, c);
}

struct Trajectory {
    std::vector<double> times;
    std::vector<std::vector<double>> states;
};

// Classical fixed-step RK4 from t0 to t1. The last step is shortened to land
// exactly on t1. Every `sample_every`-th step is recorded, plus both ends.
inline Trajectory simulate(const OpenDynam &sys, const FlowSchedule &sched, std::vector<double> c0, double t0,
                           double t1, double dt, std::size_t sample_every = 1)
{
    if (!(dt > 0.0) || !std::isfinite(dt)) {
        throw InvalidSystem("time step must be positive and finite");
    }
    if (!(t1 > t0)) {
        throw InvalidSystem("end time must be after start time");
    }
    if (c0.size() != sys.apex().size) {
        throw DimensionError("initial state has " + std::to_string(c0.size()) + " coordinates, system has "
                             + std::to_string(sys.apex().size) + " places");
    }
    if (sample_every == 0) {
        sample_every = 1;
    }
    const auto n = c0.size();
    auto rhs = [&](double t, const std::vector<double> &c) { return open_rate_rhs(sys, sched, t, c); };
    auto axpy = [n](const std::vector<double> &c, double h, const std::vector<double> &k) {
        std::vector<double> out(n);
        for (std::size_t i = 0; i < n; ++i) {
            out[i] = c[i] + h * k[i];
        }
        return out;
    };

    Trajectory traj;
    traj.times.push_back(t0);
    traj.states.push_back(c0);
    auto c = std::move(c0);
    double t = t0;
    const double eps = dt * 1e-9;
    for (std::size_t step = 1; t < t1 - eps; ++step) {
        double next = t0 + static_cast<double>(step) * dt;
        if (next > t1 - eps) {
            next = t1;
        }
        const double h = next - t;
        auto k1 = rhs(t, c);
        auto k2 = rhs(t + h / 2, axpy(c, h / 2, k1));
        auto k3 = rhs(t + h / 2, axpy(c, h / 2, k2));
        auto k4 = rhs(t + h, axpy(c, h, k3));
        std::vector<double> c_next(n);
        for (std::size_t i = 0; i < n; ++i) {
            c_next[i] = c[i] + h / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
            if (!std::isfinite(c_next[i])) {
                throw DivergenceError("state became non-finite at place " + std::to_string(i) + " after time "
                                          + std::to_string(t),
                                      t);
            }
        }
        c = std::move(c_next);
        t = next;
        if (step % sample_every == 0 || t == t1) {
            traj.times.push_back(t);
            traj.states.push_back(c);
        }
    }
    return traj;
}

} // namespace opencospan
