#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "telic/declare.hpp"
#include "telic/reduce.hpp"

namespace {

using telic::Context;
using telic::ErrorClass;
using telic::MetaStore;
using telic::Term;
using telic::TypeChecker;
using telic::testing::Lexicon;
namespace node = telic::node;

constexpr const char* kLexicon = R"(
postulate human woman cat balloon apple : NP U
postulate john mary : El_NP human
postulate ann : El_NP woman
postulate talk : El_NP human -> Prop
postulate womanIsHuman : isA woman human
def annQuaHuman : El_NP human = El_isA womanIsHuman ann
postulate black : IntAdj
def blackCat : NP U = Σ^NP cat (λp. El_IA black ((U, cat), p))
postulate eat pop : (a : Act) -> (u : UndFull) -> Evt (fst u) a (snd u)
def john_Act : Act = act_Entity ((U, human), john)
def jaa : Evt U john_Act (und_NP apple) = eat john_Act (U, und_NP apple)
postulate quick : Occ -> Prop
def jaaQuickly : Evt U john_Act (und_NP apple) = Σ^Evt jaa (λocc. quick ((john_Act, (U, und_NP apple), jaa), occ))
def evt1 : Evt U john_Act (und_NP balloon) = pop john_Act (U, und_NP balloon)
def evt3 : Evt U act_⋆ (und_NP balloon) = pop act_⋆ (U, und_NP balloon)
postulate f : Nat -> Nat
postulate P : Prop
postulate p p' : Prf P
postulate tevt : Tel john_Act (und_NP (AmountOf apple quantity nu 3))
)";

class Kernel : public ::testing::Test {
protected:
    static Lexicon& lex() {
        static Lexicon l(kLexicon);
        return l;
    }
    Term whnf(std::string_view expr) {
        telic::Reducer r(lex().env());
        return r.whnf(lex().infer(expr).term);
    }
    bool conv(std::string_view a, std::string_view b) {
        MetaStore metas;
        TypeChecker tc(lex().env(), metas);
        return tc.convertible(Context{}, lex().infer(a).term, lex().infer(b).term);
    }
    bool conv_types(std::string_view a, std::string_view b) {
        MetaStore metas;
        TypeChecker tc(lex().env(), metas);
        return tc.convertible(Context{}, lex().type(a), lex().type(b));
    }
};

// ---- whnf -------------------------------------------------------------------

TEST_F(Kernel, WhnfFiresSigmaNPRule) {
    Term w = whnf("El_NP blackCat");
    ASSERT_TRUE(w.is<node::Sigma>());
    telic::Reducer r(lex().env());
    // The binder is renamed away from the postulate p of this lexicon.
    EXPECT_EQ(lex().show(r.normalize(w)), "Σ (p1 : El_NP cat). Prf (El_IA black ((U, cat), p1))");
}

TEST_F(Kernel, WhnfFiresIsCulRule) {
    Term w = whnf("Prf (isCul tevt)");
    ASSERT_TRUE(w.is<node::Pi>());
    EXPECT_EQ(lex().show(w), "El_Evt tevt -> Prf (El_State (Result tevt))");
}

TEST_F(Kernel, WhnfBeta) {
    Term t = Term::app(Term::lambda("x", Term::var(0)), Term::constant("john"));
    telic::Reducer r(lex().env());
    EXPECT_TRUE(alpha_eq(r.whnf(t), Term::constant("john")));
}

TEST_F(Kernel, ClosedArithmeticInsideAmounts) {
    EXPECT_EQ(lex().nf("plus 2 3"), "5");
    EXPECT_EQ(lex().nf("AmountOf apple quantity nu (plus 2 3)"), "AmountOf apple quantity nu 5");
    EXPECT_EQ(lex().nf("suc (suc zero)"), "2");
}

TEST_F(Kernel, WhnfStopsAtRigidHeads) {
    Term w = whnf("El_NP human");
    const auto* c = w.as<node::Const>();
    ASSERT_NE(c, nullptr);
    EXPECT_EQ(c->name, "El_NP");
}

// ---- normalize -----------------------------------------------------------------

TEST_F(Kernel, NormalizeSeveral) {
    EXPECT_EQ(lex().nf("El_NP (several apple quantity nu)"), "Σ (n : Nat). El_NP (AmountOf apple quantity nu n)");
}

TEST_F(Kernel, NormalizeUnfoldsTel) {
    EXPECT_EQ(lex().nf("Tel john_Act (und_NP (AmountOf apple quantity nu 3))"),
              "Evt B john_Act (und_NP (AmountOf apple quantity nu 3))");
    EXPECT_EQ(lex().nf("Atel john_Act (und_NP apple)"), "Evt U john_Act (und_NP apple)");
}

TEST_F(Kernel, NormalizeKeepsNullaryDefinitionsFolded) {
    EXPECT_EQ(lex().nf("john_Act"), "john_Act");
    EXPECT_EQ(lex().nf("El_Evt jaa"), "El_Evt jaa");
}

// ---- convertibility -------------------------------------------------------------

TEST_F(Kernel, ConvertibleUnderSigmaEvtRule) {
    EXPECT_TRUE(conv_types("El_Evt jaaQuickly",
                           "Σ (occ : El_Evt jaa). Prf (quick ((john_Act, (U, und_NP apple), jaa), occ))"));
}

TEST_F(Kernel, ConvertibleIsReflexiveOnASample) {
    EXPECT_TRUE(conv("john", "john"));
    EXPECT_TRUE(conv_types("El_NP blackCat", "El_NP blackCat"));
}

TEST_F(Kernel, EtaForFunctions) {
    MetaStore metas;
    TypeChecker tc(lex().env(), metas);
    Term fn = Term::constant("f");
    Term eta = Term::lambda("x", Term::constant("f", {Term::var(0)}));
    EXPECT_TRUE(tc.convertible(Context{}, eta, fn));
    EXPECT_TRUE(tc.convertible(Context{}, fn, eta));
}

TEST_F(Kernel, EtaForPairs) {
    MetaStore metas;
    TypeChecker tc(lex().env(), metas);
    Context ctx;
    ctx.push("q", lex().type("Σ (n : Nat). El_NP (AmountOf human quantity nu n)"));
    Term q = Term::var(0);
    EXPECT_TRUE(tc.convertible(ctx, q, Term::pair(Term::fst(q), Term::snd(q))));
    EXPECT_TRUE(tc.convertible(ctx, Term::pair(Term::fst(q), Term::snd(q)), q));
}

TEST_F(Kernel, DistinctPostulatesAreNotConvertible) {
    EXPECT_FALSE(conv("john", "mary"));
    EXPECT_FALSE(conv_types("El_NP woman", "El_NP human"));
}

// ---- inference and checking ----------------------------------------------------

TEST_F(Kernel, InferJohn) {
    auto r = lex().infer("john");
    EXPECT_TRUE(alpha_eq(r.type, Term::constant("El_NP", {Term::constant("U"), Term::constant("human")})));
}

TEST_F(Kernel, InferInstantiatesDependentCodomain) {
    auto r = lex().infer("eat john_Act (U, und_NP apple)");
    MetaStore metas;
    TypeChecker tc(lex().env(), metas);
    EXPECT_TRUE(tc.convertible(Context{}, r.type, lex().type("Evt U john_Act (und_NP apple)")));
    EXPECT_EQ(lex().show(tc.normalize(r.type)), "Evt U john_Act (und_NP apple)");
}

TEST_F(Kernel, FstWitnessesQuicklyEntailment) {
    EXPECT_TRUE(lex().passes("entail w : El_Evt jaaQuickly => El_Evt jaa = fst"));
}

TEST_F(Kernel, CheckTalk) {
    EXPECT_TRUE(lex().passes("check talk annQuaHuman : Prop"));
    EXPECT_EQ(lex().error_of("check talk ann : Prop"), ErrorClass::TypeMismatch);
    // Both sides are reported in normal form.
    std::string msg = lex().message_of("check talk ann : Prop");
    EXPECT_NE(msg.find("El_NP woman"), std::string::npos) << msg;
    EXPECT_NE(msg.find("El_NP human"), std::string::npos) << msg;
}

TEST_F(Kernel, IdentityDoesNotMapAcrossActors) {
    EXPECT_EQ(lex().error_of("check λx. x : El_Evt evt1 -> El_Evt evt3"), ErrorClass::TypeMismatch);
    EXPECT_TRUE(lex().passes("check λx. x : El_Evt evt1 -> El_Evt evt1"));
}

TEST_F(Kernel, ReflChecksAtDiagonal) {
    EXPECT_TRUE(lex().passes("check refl : Id Nat 3 (plus 1 2)"));
    EXPECT_TRUE(lex().passes("check refl {El_NP human} {john} : Id (El_NP human) john john"));
    EXPECT_EQ(lex().error_of("check refl : Id (El_NP human) john mary"), ErrorClass::TypeMismatch);
}

TEST_F(Kernel, JComputesOnRefl) {
    EXPECT_EQ(lex().nf("J {Nat} {3} (λb e. Nat) 7 (refl {Nat} {3})"), "7");
}

TEST_F(Kernel, ErrorClassesOfIllFormedTerms) {
    EXPECT_EQ(lex().error_of("check john john : Prop"), ErrorClass::NotAFunction);
    EXPECT_EQ(lex().error_of("check fst john : Prop"), ErrorClass::NotAPair);
    EXPECT_EQ(lex().error_of("check john : john"), ErrorClass::NotAType);
    EXPECT_EQ(lex().error_of("check Type1 : Type1"), ErrorClass::UniverseMismatch);
    EXPECT_EQ(lex().error_of("check nobody : Prop"), ErrorClass::UnknownConstant);
    EXPECT_EQ(lex().error_of("check λx. x : Nat"), ErrorClass::TypeMismatch);
    EXPECT_EQ(lex().error_of("def h : Type = Id _ _ _"), ErrorClass::UnsolvedMeta);
    EXPECT_EQ(lex().error_of("def h = λx. x"), ErrorClass::CannotInfer);
}

TEST_F(Kernel, UnboundCoreVariable) {
    MetaStore metas;
    TypeChecker tc(lex().env(), metas);
    try {
        tc.infer(Context{}, Term::var(0));
        FAIL() << "expected an error";
    } catch (const telic::TelicError& e) {
        EXPECT_EQ(e.error_class(), ErrorClass::UnboundVariable);
    }
}

TEST_F(Kernel, UniversesArePredicativeAndNotCumulative) {
    MetaStore metas;
    TypeChecker tc(lex().env(), metas);
    EXPECT_TRUE(alpha_eq(tc.infer(Context{}, Term::universe(0)), Term::universe(1)));
    Term nat_to_type = Term::pi("_", Term::constant("Nat"), Term::universe(0));
    EXPECT_TRUE(alpha_eq(tc.infer(Context{}, nat_to_type), Term::universe(1)));
    EXPECT_THROW(tc.check(Context{}, Term::constant("Nat"), Term::universe(1)), telic::TelicError);
    EXPECT_THROW(tc.check(Context{}, Term::universe(0), Term::universe(0)), telic::TelicError);
    // The top level is not itself typed.
    EXPECT_EQ(lex().error_of("check Type : Type1"), ErrorClass::UniverseMismatch);
}

// ---- metavariables ---------------------------------------------------------------

TEST_F(Kernel, ImplicitArgumentsAreSolved) {
    auto r = lex().infer("El_NP human");
    const auto* c = r.term.as<node::Const>();
    ASSERT_NE(c, nullptr);
    ASSERT_EQ(c->args.size(), 2u);
    EXPECT_TRUE(alpha_eq(c->args[0], Term::constant("U")));
}

TEST_F(Kernel, MetaSolutionsCannotCaptureBoundVariables) {
    MetaStore metas;
    Term m = metas.fresh(0, "test");
    TypeChecker tc(lex().env(), metas);
    EXPECT_FALSE(tc.convertible(Context{}, Term::lambda("x", m), Term::lambda("x", Term::var(0))));
    EXPECT_FALSE(metas.is_solved(0));
    EXPECT_TRUE(tc.convertible(Context{}, m, Term::constant("john")));
    EXPECT_TRUE(metas.is_solved(0));
}

TEST_F(Kernel, FinishRejectsUnsolvedMetas) {
    MetaStore metas;
    metas.fresh(0, "test");
    TypeChecker tc(lex().env(), metas);
    try {
        tc.finish();
        FAIL() << "expected UnsolvedMeta";
    } catch (const telic::TelicError& e) {
        EXPECT_EQ(e.error_class(), ErrorClass::UnsolvedMeta);
    }
}

// ---- declarations ------------------------------------------------------------------

TEST_F(Kernel, DeclareResultOfPopRewrite) {
    auto r = lex().run(
        "postulate popped : (und : Und B) -> State B act_⋆ und\n"
        "rewrite (a : Act) (und : Und B) : Result (pop a (B, und)) = popped und\n"
        "norm Result (pop john_Act (B, und_NP (AmountOf balloon quantity nu 3))) = "
        "popped (und_NP (AmountOf balloon quantity nu 3))\n");
    EXPECT_EQ(r.failures(), 0u);
}

TEST_F(Kernel, RewriteValidation) {
    EXPECT_EQ(lex().error_of("def id2 (x : NP U) : NP U = x\nrewrite (x : NP U) : id2 x = human"),
              ErrorClass::RewriteHeadIsDefinition);
    EXPECT_EQ(lex().error_of("postulate g : NP U -> NP U -> NP U\nrewrite (x : NP U) : g x x = x"),
              ErrorClass::NonlinearPattern);
    EXPECT_EQ(lex().error_of("postulate g : NP U -> NP U\nrewrite (x : NP U) : g x = john"),
              ErrorClass::RewriteTypeMismatch);
    EXPECT_EQ(lex().error_of("postulate g : NP U -> NP U\nrewrite (x : NP U) (y : NP U) : g x = y"),
              ErrorClass::InvalidPattern);
    EXPECT_EQ(lex().error_of("postulate g : (NP U -> NP U) -> NP U\nrewrite (x : NP U) : g (λy. x) = x"),
              ErrorClass::InvalidPattern);
}

TEST_F(Kernel, DuplicateNames) {
    EXPECT_EQ(lex().error_of("postulate human : NP U"), ErrorClass::DuplicateName);
    EXPECT_EQ(lex().error_of("def john : Nat = 1"), ErrorClass::DuplicateName);
}

TEST_F(Kernel, EarliestDeclaredRuleFires) {
    auto r = lex().run(
        "postulate g : NP U -> NP U\n"
        "rewrite (x : NP U) : g x = human\n"
        "rewrite : g cat = woman\n"
        "norm g cat = human\n");
    EXPECT_EQ(r.failures(), 0u);
}

TEST_F(Kernel, RulesMatchAfterUnfoldingArguments) {
    // The Σ^NP rule sees through the definition blackCat.
    EXPECT_TRUE(lex().passes("postulate tom : El_NP cat\n"
                             "postulate tomIsBlack : Prf (El_IA black ((U, cat), tom))\n"
                             "check (tom, tomIsBlack) : El_NP blackCat\n"));
}

TEST_F(Kernel, FuelExhaustion) {
    telic::Session s({200});
    telic::load_prelude(s);
    auto r = s.run_source(
        "postulate g : Nat -> Nat\n"
        "rewrite (n : Nat) : g n = g (suc n)\n"
        "norm g 0\n",
        "<loop>");
    ASSERT_EQ(r.decls.size(), 3u);
    EXPECT_TRUE(r.decls[1].passed);
    EXPECT_FALSE(r.decls[2].passed);
    EXPECT_EQ(r.decls[2].error_class, ErrorClass::FuelExhausted);
}

TEST_F(Kernel, DeclareApiDirectly) {
    telic::Environment env = lex().env();
    MetaStore metas;
    Term np_u = Term::constant("NP", {Term::constant("U")});
    telic::declare_constant(env, metas, "dog", np_u, {}, telic::EntryKind::Postulate);
    EXPECT_TRUE(env.signature.contains("dog"));
    MetaStore metas2;
    EXPECT_THROW(telic::declare_constant(env, metas2, "dog", np_u, {}, telic::EntryKind::Postulate),
                 telic::TelicError);
    MetaStore metas3;
    telic::declare_definition(env, metas3, "dogNP", np_u, Term::constant("dog"), {});
    EXPECT_EQ(env.signature.find("dogNP")->kind, telic::EntryKind::Definition);
}

// ---- proof irrelevance is propositional only ------------------------------------------

TEST_F(Kernel, IrrDoesNotIdentifyProofs) {
    EXPECT_FALSE(conv("p", "p'"));
    EXPECT_TRUE(lex().passes("check irr p p' : Id (Prf P) p p'"));
    EXPECT_EQ(lex().error_of("check refl : Id (Prf P) p p'"), ErrorClass::TypeMismatch);
    // irr has no computation rule.
    EXPECT_EQ(lex().nf("irr p p'"), "irr p p'");
}

}  // namespace
