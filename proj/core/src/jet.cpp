#include "eqloc/jet.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <tuple>

namespace eqloc {

namespace {

int pack(const std::array<std::uint8_t, 4>& e, int dim, int base) {
    int p = 0;
    for (int i = dim - 1; i >= 0; --i) p = p * base + e[i];
    return p;
}

// Graded lexicographic enumeration of multi-indices with |e| <= order.
void enumerate(int dim, int order, std::vector<std::array<std::uint8_t, 4>>& out) {
    for (int total = 0; total <= order; ++total) {
        std::array<std::uint8_t, 4> e{0, 0, 0, 0};
        // iterate all e with sum == total, lexicographic on (e0, e1, ...)
        std::vector<int> stack;
        std::function<void(int, int)> rec = [&](int axis, int rest) {
            if (axis == dim - 1) {
                e[axis] = static_cast<std::uint8_t>(rest);
                out.push_back(e);
                return;
            }
            for (int k = 0; k <= rest; ++k) {
                e[axis] = static_cast<std::uint8_t>(k);
                rec(axis + 1, rest - k);
            }
        };
        rec(0, total);
    }
}

std::unique_ptr<JetTable> build_table(int dim, int order) {
    auto t = std::make_unique<JetTable>();
    t->dim = dim;
    t->order = order;
    enumerate(dim, order, t->exps);
    t->nterms = static_cast<int>(t->exps.size());

    const int base = order + 1;
    int span = 1;
    for (int i = 0; i < dim; ++i) span *= base;
    t->lookup.assign(span, -1);
    for (int i = 0; i < t->nterms; ++i)
        t->lookup[pack(t->exps[i], dim, base)] = i;

    for (int a = 0; a < t->nterms; ++a) {
        for (int b = 0; b < t->nterms; ++b) {
            std::array<std::uint8_t, 4> s{0, 0, 0, 0};
            int total = 0;
            for (int i = 0; i < dim; ++i) {
                s[i] = static_cast<std::uint8_t>(t->exps[a][i] + t->exps[b][i]);
                total += s[i];
            }
            if (total > order) continue;
            t->mul.push_back({a, b, t->lookup[pack(s, dim, base)]});
        }
    }
    std::sort(t->mul.begin(), t->mul.end(), [](const auto& x, const auto& y) {
        return std::tie(x.out, x.a, x.b) < std::tie(y.out, y.a, y.b);
    });

    t->diff.assign(dim, {});
    if (order > 0) {
        const JetTable* lower = jet_table(dim, order - 1);
        for (int axis = 0; axis < dim; ++axis) {
            t->diff[axis].assign(lower->nterms, {0, 0.0});
            for (int j = 0; j < lower->nterms; ++j) {
                std::array<std::uint8_t, 4> e = lower->exps[j];
                e[axis] = static_cast<std::uint8_t>(e[axis] + 1);
                int src = t->lookup[pack(e, dim, base)];
                t->diff[axis][j] = {src, static_cast<double>(e[axis])};
            }
        }
    }
    return t;
}

std::mutex g_table_mutex;
std::map<std::pair<int, int>, std::unique_ptr<JetTable>>& table_registry() {
    static std::map<std::pair<int, int>, std::unique_ptr<JetTable>> reg;
    return reg;
}

}  // namespace

int JetTable::index_of(const std::array<std::uint8_t, 4>& e) const {
    return lookup[pack(e, dim, order + 1)];
}

namespace {
// lock-free fast path for the small orders that dominate evaluation
constexpr int kFastOrders = 8;
std::atomic<const JetTable*> g_fast[kMaxDim + 1][kFastOrders];
}  // namespace

const JetTable* jet_table(int dim, int order) {
    if (dim < 1 || dim > kMaxDim || order < 0)
        throw std::invalid_argument("jet_table: unsupported dim/order");
    if (order < kFastOrders) {
        const JetTable* t = g_fast[dim][order].load(std::memory_order_acquire);
        if (t) return t;
    }
    std::unique_lock<std::mutex> lock(g_table_mutex);
    auto key = std::make_pair(dim, order);
    auto& reg = table_registry();
    auto it = reg.find(key);
    if (it == reg.end()) {
        // build_table recurses into jet_table for order-1
        lock.unlock();
        auto built = build_table(dim, order);
        lock.lock();
        it = reg.emplace(key, std::move(built)).first;
    }
    const JetTable* t = it->second.get();
    if (order < kFastOrders) g_fast[dim][order].store(t, std::memory_order_release);
    return t;
}

Jet::Jet(const JetTable* t) : table_(t), c_(t->nterms, Complex(0.0, 0.0)) {}

Jet Jet::constant(int dim, int order, Complex value) {
    Jet j(jet_table(dim, order));
    j.c_[0] = value;
    return j;
}

Jet Jet::variable(int dim, int order, int axis, double value) {
    Jet j(jet_table(dim, order));
    j.c_[0] = value;
    if (order > 0) {
        std::array<std::uint8_t, 4> e{0, 0, 0, 0};
        e[axis] = 1;
        j.c_[j.table_->index_of(e)] = 1.0;
    }
    return j;
}

Complex Jet::partial(int axis) const {
    if (order() == 0) return 0.0;
    std::array<std::uint8_t, 4> e{0, 0, 0, 0};
    e[axis] = 1;
    return c_[table_->index_of(e)];
}

Jet Jet::derivative(int axis) const {
    if (order() == 0) throw std::logic_error("Jet::derivative: order exhausted");
    Jet out(jet_table(dim(), order() - 1));
    const auto& d = table_->diff[axis];
    for (std::size_t j = 0; j < d.size(); ++j)
        out.c_[j] = c_[d[j].first] * d[j].second;
    return out;
}

Jet Jet::truncated(int order) const {
    if (order == this->order()) return *this;
    if (order > this->order()) throw std::logic_error("Jet::truncated: cannot raise order");
    Jet out(jet_table(dim(), order));
    for (int i = 0; i < out.table_->nterms; ++i) out.c_[i] = c_[i];
    return out;
}

Jet& Jet::operator+=(const Jet& r) {
    if (!table_) { *this = r; return *this; }
    if (table_ != r.table_) throw std::logic_error("Jet: mixed tables in +");
    for (int i = 0; i < table_->nterms; ++i) c_[i] += r.c_[i];
    return *this;
}

Jet& Jet::operator-=(const Jet& r) {
    if (!table_) { *this = -r; return *this; }
    if (table_ != r.table_) throw std::logic_error("Jet: mixed tables in -");
    for (int i = 0; i < table_->nterms; ++i) c_[i] -= r.c_[i];
    return *this;
}

Jet& Jet::operator*=(Complex r) {
    for (auto& x : c_) x *= r;
    return *this;
}

Jet operator-(Jet a) {
    for (auto& x : a.c_) x = -x;
    return a;
}

Jet operator*(const Jet& a, const Jet& b) {
    if (a.table_ != b.table_) throw std::logic_error("Jet: mixed tables in *");
    Jet out(a.table_);
    if (a.is_zero() || b.is_zero()) return out;
    for (const auto& m : a.table_->mul)
        out.c_[m.out] += a.c_[m.a] * b.c_[m.b];
    return out;
}

Jet Jet::compose(const std::vector<Complex>& d) const {
    // f(u) = sum_k d[k] * (u - u0)^k, exact because (u - u0) is nilpotent
    // at the truncation order.
    Jet n = *this;
    n.c_[0] = 0.0;
    Jet acc = Jet::constant(dim(), order(), d[0]);
    Jet p = n;
    for (int k = 1; k <= order(); ++k) {
        Jet term = p;
        term *= d[k];
        acc += term;
        if (k < order()) p = p * n;
    }
    return acc;
}

Jet operator/(const Jet& a, const Jet& b) {
    const Complex u0 = b.value();
    std::vector<Complex> d(b.order() + 1);
    Complex w = 1.0 / u0;
    for (int k = 0; k <= b.order(); ++k) {
        d[k] = (k % 2 == 0 ? w : -w);
        w /= u0;
    }
    return a * b.compose(d);
}

Jet operator/(Complex a, const Jet& b) {
    return Jet::constant(b.dim(), b.order(), a) / b;
}

Jet sin(const Jet& a) {
    const Complex s = std::sin(a.value()), c = std::cos(a.value());
    std::vector<Complex> d(a.order() + 1);
    double fact = 1.0;
    for (int k = 0; k <= a.order(); ++k) {
        if (k > 0) fact *= k;
        switch (k % 4) {
            case 0: d[k] = s / fact; break;
            case 1: d[k] = c / fact; break;
            case 2: d[k] = -s / fact; break;
            default: d[k] = -c / fact; break;
        }
    }
    return a.compose(d);
}

Jet cos(const Jet& a) {
    const Complex s = std::sin(a.value()), c = std::cos(a.value());
    std::vector<Complex> d(a.order() + 1);
    double fact = 1.0;
    for (int k = 0; k <= a.order(); ++k) {
        if (k > 0) fact *= k;
        switch (k % 4) {
            case 0: d[k] = c / fact; break;
            case 1: d[k] = -s / fact; break;
            case 2: d[k] = -c / fact; break;
            default: d[k] = s / fact; break;
        }
    }
    return a.compose(d);
}

Jet exp(const Jet& a) {
    const Complex e = std::exp(a.value());
    std::vector<Complex> d(a.order() + 1);
    double fact = 1.0;
    for (int k = 0; k <= a.order(); ++k) {
        if (k > 0) fact *= k;
        d[k] = e / fact;
    }
    return a.compose(d);
}

Jet sqrt(const Jet& a) {
    const Complex r = std::sqrt(a.value());
    std::vector<Complex> d(a.order() + 1);
    // d[k] = binom(1/2, k) * u0^(1/2 - k); ratio d[k]/d[k-1] = (1.5 - k)/(k u0)
    d[0] = r;
    Complex c = r;
    for (int k = 1; k <= a.order(); ++k) {
        c *= (1.5 / k - 1.0) / a.value();
        d[k] = c;
    }
    return a.compose(d);
}

std::array<Jet, 4> seed_point(const Pt& p, int dim, int order) {
    std::array<Jet, 4> out;
    for (int i = 0; i < dim; ++i) out[i] = Jet::variable(dim, order, i, p[i]);
    return out;
}

}  // namespace eqloc
