#include "telic/meta.hpp"

namespace telic {

Term MetaStore::fresh(std::uint32_t scope_size, std::string origin, std::optional<Span> span) {
    auto id = static_cast<std::uint32_t>(metas_.size());
    metas_.push_back(Info{scope_size, std::nullopt, std::nullopt, std::nullopt, std::move(origin), std::move(span)});
    std::vector<Term> spine;
    spine.reserve(scope_size);
    for (std::uint32_t i = 0; i < scope_size; ++i) spine.push_back(Term::var(scope_size - 1 - i));
    return Term::meta(id, std::move(spine));
}

std::vector<Term> spine_env(const std::vector<Term>& spine) {
    return std::vector<Term>(spine.rbegin(), spine.rend());
}

std::optional<Term> MetaStore::value_of(const node::Meta& m) const {
    const auto& info = metas_.at(m.id);
    if (!info.solution) return std::nullopt;
    return instantiate(*info.solution, spine_env(m.spine));
}

std::optional<Term> MetaStore::type_of(const node::Meta& m) const {
    const auto& info = metas_.at(m.id);
    if (!info.type) return std::nullopt;
    return instantiate(*info.type, spine_env(m.spine));
}

std::vector<std::uint32_t> MetaStore::unsolved() const {
    std::vector<std::uint32_t> out;
    for (std::uint32_t i = 0; i < metas_.size(); ++i)
        if (!metas_[i].solution) out.push_back(i);
    return out;
}

Term MetaStore::zonk(const Term& t) const {
    return std::visit(
        [&](const auto& n) -> Term {
            using N = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<N, node::Meta>) {
                std::vector<Term> spine;
                spine.reserve(n.spine.size());
                for (const auto& a : n.spine) spine.push_back(zonk(a));
                node::Meta m{n.id, std::move(spine)};
                if (auto v = value_of(m)) return zonk(*v);
                return Term::meta(m.id, std::move(m.spine));
            } else if constexpr (std::is_same_v<N, node::Const>) {
                if (n.args.empty()) return t;
                std::vector<Term> args;
                args.reserve(n.args.size());
                for (const auto& a : n.args) args.push_back(zonk(a));
                return Term::constant(n.name, std::move(args));
            } else if constexpr (std::is_same_v<N, node::Pi>) {
                return Term::pi(n.hint, zonk(n.domain), zonk(n.codomain));
            } else if constexpr (std::is_same_v<N, node::Lambda>) {
                return Term::lambda(n.hint, zonk(n.body));
            } else if constexpr (std::is_same_v<N, node::App>) {
                return apply_spine(zonk(n.fn), {zonk(n.arg)});
            } else if constexpr (std::is_same_v<N, node::Sigma>) {
                return Term::sigma(n.hint, zonk(n.first), zonk(n.second));
            } else if constexpr (std::is_same_v<N, node::Pair>) {
                return Term::pair(zonk(n.first), zonk(n.second));
            } else if constexpr (std::is_same_v<N, node::Fst>) {
                return Term::fst(zonk(n.pair));
            } else if constexpr (std::is_same_v<N, node::Snd>) {
                return Term::snd(zonk(n.pair));
            } else {
                return t;
            }
        },
        t.node().value);
}

}  // namespace telic
