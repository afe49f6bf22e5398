#!/usr/bin/env python3
"""Regenerates the bundled benchmark suites and their replay scripts.

Every dataset row is paired with scripted provider entries that replay a
perfect generation run: the script answers exactly the module calls the
solver makes, keyed by (instance, module, anonymized goal). Untouched keys
fall back to the module's no-answer marker, so only productive calls need
entries. Run from anywhere; writes into data/suites next to this file's
parent directory.
"""

import json
import pathlib

OUT = pathlib.Path(__file__).resolve().parent.parent / "data" / "suites"

NO_FACT = "No applicable fact."
NO_RULE = "No applicable rule."
NOT_GIVEN = "The value is not directly given in the problem."


def row(iid, context, goal, label, family, split=None):
    r = {"id": iid, "context": context, "goal": goal, "label": label,
         "family": family}
    if split is not None:
        r["split"] = split
    return r


def entry(iid, module, goal, responses):
    return {"instance": iid, "module": module, "goal": goal,
            "responses": responses}


# --------------------------------------------------------------------------
# Arithmetic: every chain routes at least one subgoal result into an
# arithmetic literal, so disabling binding propagation loses every answer.
#
# Target specs are (kind, goal_key, search_sentence, statement) in the order
# the solver requests them; "rule" targets answer the fact search with the
# not-given marker, "fact" targets answer the rule search with no-rule.

def arith_script(iid, targets):
    lines = []
    for kind, key, sentence, statement in targets:
        if kind == "rule":
            lines.append(entry(iid, "fact_search", key, [NOT_GIVEN]))
            lines.append(entry(iid, "rule_search", key, [sentence]))
            lines.append(entry(iid, "rule_translation", key, [statement]))
        else:
            lines.append(entry(iid, "fact_search", key, [sentence]))
            lines.append(entry(iid, "fact_translation", key, [statement]))
            lines.append(entry(iid, "rule_search", key, [NO_RULE]))
    return lines


ARITH = [
    # (id, context, label, targets)
    ("arith-01",
     "Julie is reading a 120-page book. Yesterday, she was able to read 12 "
     "pages and today, she read twice as many pages as yesterday. If she "
     "wants to read half of the remaining pages tomorrow, how many pages "
     "should she read?",
     42,
     [("rule", "answer(_)",
       "The number of pages Julie should read tomorrow can be calculated as "
       "half of the remaining pages.",
       "answer(X) :- number_of_remaining_pages(A), X = A / 2."),
      ("rule", "number_of_remaining_pages(_)",
       "The number of remaining pages can be calculated by subtracting the "
       "pages read yesterday and today from the total pages.",
       "number_of_remaining_pages(X) :- number_of_total_pages(T), "
       "number_of_pages_read_yesterday(A), number_of_pages_read_today(B), "
       "X = T - A - B."),
      ("fact", "number_of_total_pages(_)",
       "Julie is reading a 120-page book.",
       "number_of_total_pages(120)."),
      ("fact", "number_of_pages_read_yesterday(_)",
       "Yesterday, she was able to read 12 pages.",
       "number_of_pages_read_yesterday(12)."),
      ("rule", "number_of_pages_read_today(_)",
       "The number of pages read today can be calculated as twice the "
       "number of pages read yesterday.",
       "number_of_pages_read_today(X) :- number_of_pages_read_yesterday(A), "
       "X = 2 * A.")]),
    ("arith-02",
     "A book has 93 pages. Julie has already read 21 of them. If she reads "
     "half of the remaining pages tomorrow, how many pages will she read "
     "tomorrow?",
     36,
     [("rule", "answer(_)",
       "The answer can be calculated as half of the remaining pages.",
       "answer(X) :- number_of_remaining_pages(A), X = A / 2."),
      ("rule", "number_of_remaining_pages(_)",
       "The number of remaining pages can be calculated by subtracting the "
       "pages already read from the total pages.",
       "number_of_remaining_pages(X) :- number_of_total_pages(T), "
       "number_of_pages_read(R), X = T - R."),
      ("fact", "number_of_total_pages(_)",
       "A book has 93 pages.",
       "number_of_total_pages(93)."),
      ("fact", "number_of_pages_read(_)",
       "Julie has already read 21 of them.",
       "number_of_pages_read(21).")]),
    ("arith-03",
     "Janet's ducks lay 16 eggs per day. She eats 3 for breakfast and bakes "
     "4 into muffins. She sells every remaining egg for 2 dollars. How many "
     "dollars does she make every day?",
     18,
     [("rule", "answer(_)",
       "The daily earnings can be calculated as the number of remaining "
       "eggs times the price per egg.",
       "answer(X) :- number_of_remaining_eggs(A), price_per_egg(P), "
       "X = A * P."),
      ("rule", "number_of_remaining_eggs(_)",
       "The number of remaining eggs can be calculated by subtracting the "
       "eggs eaten and baked from the eggs laid per day.",
       "number_of_remaining_eggs(X) :- eggs_per_day(T), eggs_eaten(E), "
       "eggs_baked(B), X = T - E - B."),
      ("fact", "eggs_per_day(_)",
       "Janet's ducks lay 16 eggs per day.",
       "eggs_per_day(16)."),
      ("fact", "eggs_eaten(_)",
       "She eats 3 for breakfast.",
       "eggs_eaten(3)."),
      ("fact", "eggs_baked(_)",
       "She bakes 4 into muffins.",
       "eggs_baked(4)."),
      ("fact", "price_per_egg(_)",
       "She sells every remaining egg for 2 dollars.",
       "price_per_egg(2).")]),
    ("arith-04",
     "A robe takes 2 bolts of blue fiber and half that much white fiber. "
     "How many bolts in total does it take?",
     3,
     [("rule", "answer(_)",
       "The total number of bolts can be calculated as the blue fiber plus "
       "the white fiber.",
       "answer(X) :- bolts_of_blue_fiber(A), bolts_of_white_fiber(B), "
       "X = A + B."),
      ("fact", "bolts_of_blue_fiber(_)",
       "A robe takes 2 bolts of blue fiber.",
       "bolts_of_blue_fiber(2)."),
      ("rule", "bolts_of_white_fiber(_)",
       "The white fiber can be calculated as half of the blue fiber.",
       "bolts_of_white_fiber(X) :- bolts_of_blue_fiber(A), X = A / 2.")]),
    ("arith-05",
     "Weng earns 12 dollars an hour for babysitting. Yesterday, she just "
     "did 50 minutes of babysitting. How much did she earn?",
     10,
     [("rule", "answer(_)",
       "The earnings can be calculated as the hourly rate times the minutes "
       "worked divided by 60.",
       "answer(X) :- hourly_rate(R), minutes_worked(M), X = R * M / 60."),
      ("fact", "hourly_rate(_)",
       "Weng earns 12 dollars an hour for babysitting.",
       "hourly_rate(12)."),
      ("fact", "minutes_worked(_)",
       "Yesterday, she just did 50 minutes of babysitting.",
       "minutes_worked(50).")]),
    ("arith-06",
     "A shirt costs 80 dollars. The store offers a 25 percent discount on "
     "every shirt. How much does the shirt cost after the discount?",
     60,
     [("rule", "answer(_)",
       "The discounted price can be calculated by subtracting the discount "
       "amount from the original price.",
       "answer(X) :- original_price(P), discount_percent(D), "
       "X = P - (P * D / 100)."),
      ("fact", "original_price(_)",
       "A shirt costs 80 dollars.",
       "original_price(80)."),
      ("fact", "discount_percent(_)",
       "The store offers a 25 percent discount on every shirt.",
       "discount_percent(25).")]),
    ("arith-07",
     "Building A has 4 floors. Building B has one more floor than twice "
     "building A. Building C has six fewer floors than five times building "
     "B. How many floors does building C have?",
     39,
     [("rule", "answer(_)",
       "The answer is the number of floors of building C.",
       "answer(X) :- floors_of_building_c(A), X = A."),
      ("rule", "floors_of_building_c(_)",
       "The floors of building C can be calculated as five times building B "
       "minus six.",
       "floors_of_building_c(X) :- floors_of_building_b(A), "
       "X = (5 * A) - 6."),
      ("rule", "floors_of_building_b(_)",
       "The floors of building B can be calculated as twice building A plus "
       "one.",
       "floors_of_building_b(X) :- floors_of_building_a(A), "
       "X = (2 * A) + 1."),
      ("fact", "floors_of_building_a(_)",
       "Building A has 4 floors.",
       "floors_of_building_a(4).")]),
    ("arith-08",
     "A farmer has 5 baskets with 24 apples in each basket. He sells 48 "
     "apples at the market. How many apples does he have left?",
     72,
     [("rule", "answer(_)",
       "The remaining apples can be calculated by subtracting the apples "
       "sold from the total apples.",
       "answer(X) :- total_apples(T), apples_sold(S), X = T - S."),
      ("rule", "total_apples(_)",
       "The total apples can be calculated as the number of baskets times "
       "the apples per basket.",
       "total_apples(X) :- number_of_baskets(B), apples_per_basket(P), "
       "X = B * P."),
      ("fact", "number_of_baskets(_)",
       "A farmer has 5 baskets.",
       "number_of_baskets(5)."),
      ("fact", "apples_per_basket(_)",
       "Each basket has 24 apples.",
       "apples_per_basket(24)."),
      ("fact", "apples_sold(_)",
       "He sells 48 apples at the market.",
       "apples_sold(48).")]),
    ("arith-09",
     "Maria scored 82, 91 and 94 on her three math tests. What is her "
     "average score?",
     89,
     [("rule", "answer(_)",
       "The average score can be calculated as the sum of the three scores "
       "divided by three.",
       "answer(X) :- score_on_first_test(A), score_on_second_test(B), "
       "score_on_third_test(C), X = (A + B + C) / 3."),
      ("fact", "score_on_first_test(_)",
       "Maria scored 82 on her first test.",
       "score_on_first_test(82)."),
      ("fact", "score_on_second_test(_)",
       "Maria scored 91 on her second test.",
       "score_on_second_test(91)."),
      ("fact", "score_on_third_test(_)",
       "Maria scored 94 on her third test.",
       "score_on_third_test(94).")]),
    ("arith-10",
     "Leah saves 3.50 dollars every week for 8 weeks. She already had 12.75 "
     "dollars in her piggy bank. How much money does she have now?",
     40.75,
     [("rule", "answer(_)",
       "The total savings can be calculated as the weekly saving times the "
       "number of weeks plus the initial savings.",
       "answer(X) :- weekly_saving(W), number_of_weeks(N), "
       "initial_savings(S), X = (W * N) + S."),
      ("fact", "weekly_saving(_)",
       "Leah saves 3.50 dollars every week.",
       "weekly_saving(3.5)."),
      ("fact", "number_of_weeks(_)",
       "She saves for 8 weeks.",
       "number_of_weeks(8)."),
      ("fact", "initial_savings(_)",
       "She already had 12.75 dollars in her piggy bank.",
       "initial_savings(12.75).")]),
]


# --------------------------------------------------------------------------
# Deductive without negation: short generated chains, all provable.

def ded_script(iid, targets):
    lines = []
    for kind, key, sentence, statement in targets:
        if kind == "rule":
            lines.append(entry(iid, "fact_search", key, [NO_FACT]))
            lines.append(entry(iid, "rule_search", key, [sentence]))
            lines.append(entry(iid, "rule_translation", key, [statement]))
        else:
            lines.append(entry(iid, "fact_search", key, [sentence]))
            lines.append(entry(iid, "fact_translation", key, [statement]))
            lines.append(entry(iid, "rule_search", key, [NO_RULE]))
    return lines


DEDUCTIVE = [
    ("ded-01",
     "The mouse likes the cat.",
     "likes(mouse, cat)", True,
     [("fact", "likes(mouse, cat)", "The mouse likes the cat.",
       "likes(mouse, cat).")]),
    ("ded-02",
     "If someone likes the cat then they like the mouse. The dog likes the "
     "cat.",
     "likes(dog, mouse)", True,
     [("rule", "likes(dog, mouse)",
       "If someone likes the cat then they like the mouse.",
       "likes(X, mouse) :- likes(X, cat)."),
      ("fact", "likes(dog, cat)", "The dog likes the cat.",
       "likes(dog, cat).")]),
    ("ded-03",
     "Alan is young. Bob is young. Bob is round. If someone is young and "
     "round then they are cold.",
     "is(bob, cold)", True,
     [("rule", "is(bob, cold)",
       "If someone is young and round then they are cold.",
       "is(X, cold) :- is(X, young), is(X, round)."),
      ("fact", "is(bob, young)", "Bob is young.", "is(bob, young)."),
      ("fact", "is(bob, round)", "Bob is round.", "is(bob, round).")]),
    ("ded-04",
     "If someone chases the dog then the dog chases the lion. The bald "
     "eagle chases the dog.",
     "chases(dog, lion)", True,
     [("rule", "chases(dog, lion)",
       "If someone chases the dog then the dog chases the lion.",
       "chases(dog, lion) :- chases(X, dog)."),
      ("fact", "chases(_, dog)", "The bald eagle chases the dog.",
       "chases(bald_eagle, dog).")]),
    ("ded-05",
     "Anne is round. Erin is furry. Fiona is blue.",
     "is(fiona, blue)", True,
     [("fact", "is(fiona, blue)", "Fiona is blue.", "is(fiona, blue).")]),
    ("ded-06",
     "If someone is big then they chase the mouse. If someone is rough then "
     "they are big. The dog is rough.",
     "chases(dog, mouse)", True,
     [("rule", "chases(dog, mouse)",
       "If someone is big then they chase the mouse.",
       "chases(X, mouse) :- is(X, big)."),
      ("rule", "is(dog, big)",
       "If someone is rough then they are big.",
       "is(X, big) :- is(X, rough)."),
      ("fact", "is(dog, rough)", "The dog is rough.", "is(dog, rough).")]),
    ("ded-07",
     "If someone eats the mouse and they are big then they chase the cat. "
     "The lion eats the mouse. The lion is big.",
     "chases(lion, cat)", True,
     [("rule", "chases(lion, cat)",
       "If someone eats the mouse and they are big then they chase the cat.",
       "chases(X, cat) :- eats(X, mouse), is(X, big)."),
      ("fact", "eats(lion, mouse)", "The lion eats the mouse.",
       "eats(lion, mouse)."),
      ("fact", "is(lion, big)", "The lion is big.", "is(lion, big).")]),
    ("ded-08",
     "Charlie is kind. If someone is kind then they like the dog.",
     "likes(charlie, dog)", True,
     [("rule", "likes(charlie, dog)",
       "If someone is kind then they like the dog.",
       "likes(X, dog) :- is(X, kind)."),
      ("fact", "is(charlie, kind)", "Charlie is kind.",
       "is(charlie, kind).")]),
    ("ded-09",
     "If someone likes the bear then the bear likes them. The cow likes the "
     "bear.",
     "likes(bear, cow)", True,
     [("rule", "likes(bear, cow)",
       "If someone likes the bear then the bear likes them.",
       "likes(bear, X) :- likes(X, bear)."),
      ("fact", "likes(cow, bear)", "The cow likes the bear.",
       "likes(cow, bear).")]),
    ("ded-10",
     "If someone is green then they are round. If someone is round then "
     "they are nice. The frog is green.",
     "is(frog, nice)", True,
     [("rule", "is(frog, nice)",
       "If someone is round then they are nice.",
       "is(X, nice) :- is(X, round)."),
      ("rule", "is(frog, round)",
       "If someone is green then they are round.",
       "is(X, round) :- is(X, green)."),
      ("fact", "is(frog, green)", "The frog is green.",
       "is(frog, green).")]),
]


# --------------------------------------------------------------------------
# Negation: explicit negative facts and negation-as-failure under the
# closed-world assumption. Scripts spell out marker replies and the
# polarity-mismatch rejections a real model would produce.

def neg_marker(iid, key):
    return [entry(iid, "fact_search", key, [NO_FACT]),
            entry(iid, "rule_search", key, [NO_RULE])]


NEGATION = []


def add_negation(iid, context, goal, label, split, script):
    NEGATION.append((iid, context, goal, label, split, script))


# Shape A: rule with a negative condition discharged by an explicit
# negative fact. The positive inner query draws the same sentence, whose
# translation is rejected for polarity before the negative goal accepts it.
def shape_a(iid, actor, target, prop, chase_sentence, neg_sentence):
    rule = (f"eats(X, {target}) :- chases(X, {target}), "
            f"not is({target}, {prop}).")
    script = []
    script += [entry(iid, "fact_search", f"eats({actor}, {target})", [NO_FACT]),
               entry(iid, "rule_search", f"eats({actor}, {target})",
                     [f"If someone chases the {target.replace('_', ' ')} and "
                      f"the {target.replace('_', ' ')} is not {prop} then "
                      f"they eat the {target.replace('_', ' ')}."]),
               entry(iid, "rule_translation", f"eats({actor}, {target})",
                     [rule])]
    script += [entry(iid, "fact_search", f"chases({actor}, {target})",
                     [chase_sentence]),
               entry(iid, "fact_translation", f"chases({actor}, {target})",
                     [f"chases({actor}, {target})."]),
               entry(iid, "rule_search", f"chases({actor}, {target})",
                     [NO_RULE])]
    # Positive inner query: the model can only offer the negative sentence,
    # which fails validation against the positive goal.
    script += [entry(iid, "fact_search", f"is({target}, {prop})",
                     [neg_sentence]),
               entry(iid, "fact_translation", f"is({target}, {prop})",
                     [f"not is({target}, {prop})."]),
               entry(iid, "rule_search", f"is({target}, {prop})", [NO_RULE])]
    # The negative goal accepts the same statement.
    script += [entry(iid, "fact_search", f"not is({target}, {prop})",
                     [neg_sentence]),
               entry(iid, "fact_translation", f"not is({target}, {prop})",
                     [f"not is({target}, {prop})."]),
               entry(iid, "rule_search", f"not is({target}, {prop})",
                     [NO_RULE])]
    return script


add_negation(
    "neg-01",
    "If someone chases the bald eagle and the bald eagle is not cold then "
    "they eat the bald eagle. The dog chases the bald eagle. The bald eagle "
    "is not cold.",
    "eats(dog, bald_eagle)", True, "proof+neg",
    shape_a("neg-01", "dog", "bald_eagle", "cold",
            "The dog chases the bald eagle.", "The bald eagle is not cold."))

add_negation(
    "neg-06",
    "If someone chases the squirrel and the squirrel is not big then they "
    "eat the squirrel. The cat chases the squirrel. The squirrel is not big.",
    "eats(cat, squirrel)", True, "proof+neg",
    shape_a("neg-06", "cat", "squirrel", "big",
            "The cat chases the squirrel.", "The squirrel is not big."))


# Shape B: pure closed-world negation; nothing in the context mentions the
# negated property, so both the inner and the negative query come up empty
# and negation-as-failure concludes.
def shape_b(iid, actor, liked, have, lack, have_sentence):
    rule = f"likes(X, {liked}) :- is(X, {have}), not is(X, {lack})."
    script = []
    script += [entry(iid, "fact_search", f"likes({actor}, {liked})", [NO_FACT]),
               entry(iid, "rule_search", f"likes({actor}, {liked})",
                     [f"If someone is {have} and not {lack} then they like "
                      f"the {liked}."]),
               entry(iid, "rule_translation", f"likes({actor}, {liked})",
                     [rule])]
    script += [entry(iid, "fact_search", f"is({actor}, {have})",
                     [have_sentence]),
               entry(iid, "fact_translation", f"is({actor}, {have})",
                     [f"is({actor}, {have})."]),
               entry(iid, "rule_search", f"is({actor}, {have})", [NO_RULE])]
    script += neg_marker(iid, f"is({actor}, {lack})")
    script += neg_marker(iid, f"not is({actor}, {lack})")
    return script


add_negation(
    "neg-02",
    "If someone is big and not young then they like the bear. The lion is "
    "big.",
    "likes(lion, bear)", True, "proof+neg",
    shape_b("neg-02", "lion", "bear", "big", "young", "The lion is big."))

add_negation(
    "neg-07",
    "If someone is round and not green then they like the dog. The frog is "
    "round.",
    "likes(frog, dog)", True, "proof+neg",
    shape_b("neg-07", "frog", "dog", "round", "green", "The frog is round."))


# Shape C: the negative condition is defeated — the context proves the
# inner goal, so negation-as-failure fails and the query is unprovable.
def shape_c(iid, actor, target, verb, prop, verb_sentence, prop_sentence):
    rule = (f"{verb}(X, {target}) :- likes(X, {target}), "
            f"not is(X, {prop}).")
    script = []
    script += [entry(iid, "fact_search", f"{verb}({actor}, {target})",
                     [NO_FACT]),
               entry(iid, "rule_search", f"{verb}({actor}, {target})",
                     [f"If someone likes the {target} and they are not "
                      f"{prop} then they {verb.rstrip('s')} the {target}."]),
               entry(iid, "rule_translation", f"{verb}({actor}, {target})",
                     [rule])]
    script += [entry(iid, "fact_search", f"likes({actor}, {target})",
                     [verb_sentence]),
               entry(iid, "fact_translation", f"likes({actor}, {target})",
                     [f"likes({actor}, {target})."]),
               entry(iid, "rule_search", f"likes({actor}, {target})",
                     [NO_RULE])]
    # The inner goal is provable from the context, which defeats the
    # negative condition.
    script += [entry(iid, "fact_search", f"is({actor}, {prop})",
                     [prop_sentence]),
               entry(iid, "fact_translation", f"is({actor}, {prop})",
                     [f"is({actor}, {prop})."]),
               entry(iid, "rule_search", f"is({actor}, {prop})", [NO_RULE])]
    script += neg_marker(iid, f"not is({actor}, {prop})")
    return script


add_negation(
    "neg-03",
    "If someone likes the mouse and they are not rough then they chase the "
    "mouse. The wolf likes the mouse. The wolf is rough.",
    "chases(wolf, mouse)", False, "no-proof",
    shape_c("neg-03", "wolf", "mouse", "chases", "rough",
            "The wolf likes the mouse.", "The wolf is rough."))

add_negation(
    "neg-08",
    "If someone likes the cat and they are not kind then they chase the "
    "cat. The tiger likes the cat. The tiger is kind.",
    "chases(tiger, cat)", False, "no-proof",
    shape_c("neg-08", "tiger", "cat", "chases", "kind",
            "The tiger likes the cat.", "The tiger is kind."))


# Shape D: the query itself is negative; an explicit negative fact from the
# context proves it (neg-04), or the provable positive defeats it (neg-09).
add_negation(
    "neg-04",
    "The bald eagle does not eat the mouse.",
    "not eats(bald_eagle, mouse)", True, "proof+neg",
    neg_marker("neg-04", "eats(bald_eagle, mouse)") +
    [entry("neg-04", "fact_search", "not eats(bald_eagle, mouse)",
           ["The bald eagle does not eat the mouse."]),
     entry("neg-04", "fact_translation", "not eats(bald_eagle, mouse)",
           ["not eats(bald_eagle, mouse)."]),
     entry("neg-04", "rule_search", "not eats(bald_eagle, mouse)",
           [NO_RULE])])

add_negation(
    "neg-09",
    "The cat eats the mouse.",
    "not eats(cat, mouse)", False, "no-proof",
    [entry("neg-09", "fact_search", "eats(cat, mouse)",
           ["The cat eats the mouse."]),
     entry("neg-09", "fact_translation", "eats(cat, mouse)",
           ["eats(cat, mouse)."]),
     entry("neg-09", "rule_search", "eats(cat, mouse)", [NO_RULE])] +
    neg_marker("neg-09", "not eats(cat, mouse)"))


# Shape E: a rule whose only condition is negative, discharged by an
# explicit negative fact; the positive inner attempt is rejected first.
def shape_e(iid, eater, eaten, beneficiary, neg_sentence):
    rule = (f"chases({beneficiary}, {eater}) :- "
            f"not eats({eater}, {eaten}).")
    script = []
    script += [entry(iid, "fact_search", f"chases({beneficiary}, {eater})",
                     [NO_FACT]),
               entry(iid, "rule_search", f"chases({beneficiary}, {eater})",
                     [f"If the {eater} does not eat the {eaten} then the "
                      f"{beneficiary} chases the {eater}."]),
               entry(iid, "rule_translation",
                     f"chases({beneficiary}, {eater})", [rule])]
    script += [entry(iid, "fact_search", f"eats({eater}, {eaten})",
                     [neg_sentence]),
               entry(iid, "fact_translation", f"eats({eater}, {eaten})",
                     [f"not eats({eater}, {eaten})."]),
               entry(iid, "rule_search", f"eats({eater}, {eaten})",
                     [NO_RULE])]
    script += [entry(iid, "fact_search", f"not eats({eater}, {eaten})",
                     [neg_sentence]),
               entry(iid, "fact_translation", f"not eats({eater}, {eaten})",
                     [f"not eats({eater}, {eaten})."]),
               entry(iid, "rule_search", f"not eats({eater}, {eaten})",
                     [NO_RULE])]
    return script


add_negation(
    "neg-05",
    "If the lion does not eat the dog then the dog chases the lion. The "
    "lion does not eat the dog.",
    "chases(dog, lion)", True, "proof+neg",
    shape_e("neg-05", "lion", "dog", "dog", "The lion does not eat the dog."))

add_negation(
    "neg-10",
    "If the bear does not like the tiger then the tiger chases the bear. "
    "The bear does not like the tiger.",
    "chases(tiger, bear)", True, "proof+neg",
    [entry("neg-10", "fact_search", "chases(tiger, bear)", [NO_FACT]),
     entry("neg-10", "rule_search", "chases(tiger, bear)",
           ["If the bear does not like the tiger then the tiger chases the "
            "bear."]),
     entry("neg-10", "rule_translation", "chases(tiger, bear)",
           ["chases(tiger, bear) :- not likes(bear, tiger)."]),
     entry("neg-10", "fact_search", "likes(bear, tiger)",
           ["The bear does not like the tiger."]),
     entry("neg-10", "fact_translation", "likes(bear, tiger)",
           ["not likes(bear, tiger)."]),
     entry("neg-10", "rule_search", "likes(bear, tiger)", [NO_RULE]),
     entry("neg-10", "fact_search", "not likes(bear, tiger)",
           ["The bear does not like the tiger."]),
     entry("neg-10", "fact_translation", "not likes(bear, tiger)",
           ["not likes(bear, tiger)."]),
     entry("neg-10", "rule_search", "not likes(bear, tiger)", [NO_RULE])])


# Negation instances re-sorted into id order for the dataset files.
NEGATION.sort(key=lambda t: t[0])


# --------------------------------------------------------------------------
# Relational: the composition rules come from the kinship fixture, so only
# facts are generated; the rule modules are fixed to their markers.

def rel_links(iid, links):
    lines = []
    for key, sentence, statement in links:
        lines.append(entry(iid, "fact_search", key, [sentence]))
        lines.append(entry(iid, "fact_translation", key, [statement]))
    return lines


RELATIONAL = [
    ("rel-01",
     "[George] is [Tim]'s father. [Tim] is [Sam]'s father.",
     "isRelationOf(george, grandfather, sam)", True,
     rel_links("rel-01", [
         ("isRelationOf(george, father, _)", "[George] is [Tim]'s father.",
          "isRelationOf(george, father, tim)."),
         ("isRelationOf(tim, father, sam)", "[Tim] is [Sam]'s father.",
          "isRelationOf(tim, father, sam).")])),
    ("rel-02",
     "[Karen] is [David]'s mother. [David] is [Lucy]'s father.",
     "isRelationOf(karen, grandmother, lucy)", True,
     rel_links("rel-02", [
         ("isRelationOf(karen, mother, _)", "[Karen] is [David]'s mother.",
          "isRelationOf(karen, mother, david)."),
         ("isRelationOf(david, father, lucy)", "[David] is [Lucy]'s father.",
          "isRelationOf(david, father, lucy).")])),
    ("rel-03",
     "[Mark] is [Paul]'s brother. [Paul] is [Emma]'s father.",
     "isRelationOf(mark, uncle, emma)", True,
     rel_links("rel-03", [
         ("isRelationOf(mark, brother, _)", "[Mark] is [Paul]'s brother.",
          "isRelationOf(mark, brother, paul)."),
         ("isRelationOf(paul, father, emma)", "[Paul] is [Emma]'s father.",
          "isRelationOf(paul, father, emma).")])),
    ("rel-04",
     "[Susan] is [Mary]'s sister. [Mary] is [John]'s mother.",
     "isRelationOf(susan, aunt, john)", True,
     rel_links("rel-04", [
         ("isRelationOf(susan, sister, _)", "[Susan] is [Mary]'s sister.",
          "isRelationOf(susan, sister, mary)."),
         ("isRelationOf(mary, mother, john)", "[Mary] is [John]'s mother.",
          "isRelationOf(mary, mother, john).")])),
    ("rel-05",
     "[Alex] is [Brian]'s son. [Brian] is [Carl]'s brother.",
     "isRelationOf(alex, nephew, carl)", True,
     rel_links("rel-05", [
         ("isRelationOf(alex, son, _)", "[Alex] is [Brian]'s son.",
          "isRelationOf(alex, son, brian)."),
         ("isRelationOf(brian, brother, carl)",
          "[Brian] is [Carl]'s brother.",
          "isRelationOf(brian, brother, carl).")])),
    ("rel-06",
     "[Peter] is [Anna]'s son. [Anna] is [Rose]'s daughter.",
     "isRelationOf(peter, grandson, rose)", True,
     rel_links("rel-06", [
         ("isRelationOf(peter, son, _)", "[Peter] is [Anna]'s son.",
          "isRelationOf(peter, son, anna)."),
         ("isRelationOf(anna, daughter, rose)",
          "[Anna] is [Rose]'s daughter.",
          "isRelationOf(anna, daughter, rose).")])),
    ("rel-07",
     "[Tom] is [Henry]'s son. [Henry] is [Jack]'s father.",
     "isRelationOf(tom, brother, jack)", True,
     rel_links("rel-07", [
         ("isRelationOf(tom, son, _)", "[Tom] is [Henry]'s son.",
          "isRelationOf(tom, son, henry)."),
         ("isRelationOf(henry, father, jack)",
          "[Henry] is [Jack]'s father.",
          "isRelationOf(henry, father, jack).")])),
    ("rel-08",
     "[Linda] is [Frank]'s wife. [Frank] is [Amy]'s father.",
     "isRelationOf(linda, mother, amy)", True,
     rel_links("rel-08", [
         ("isRelationOf(linda, wife, _)", "[Linda] is [Frank]'s wife.",
          "isRelationOf(linda, wife, frank)."),
         ("isRelationOf(frank, father, amy)",
          "[Frank] is [Amy]'s father.",
          "isRelationOf(frank, father, amy).")])),
    # Perturbed labels: the stated relation does not follow, and the only
    # candidate sentence translates to a mismatched relation that fails
    # head unification.
    ("rel-09",
     "[Oscar] is [Leo]'s brother. [Leo] is [Mia]'s father.",
     "isRelationOf(oscar, aunt, mia)", False,
     rel_links("rel-09", [
         ("isRelationOf(oscar, sister, _)", "[Oscar] is [Leo]'s brother.",
          "isRelationOf(oscar, brother, leo).")])),
    ("rel-10",
     "[Nina] is [Paula]'s daughter. [Paula] is [Victor]'s sister.",
     "isRelationOf(nina, nephew, victor)", False,
     rel_links("rel-10", [
         ("isRelationOf(nina, son, _)", "[Nina] is [Paula]'s daughter.",
          "isRelationOf(nina, daughter, paula).")])),
]


# --------------------------------------------------------------------------

def write_jsonl(path, rows):
    with open(path, "w") as f:
        for r in rows:
            f.write(json.dumps(r) + "\n")


def main():
    OUT.mkdir(parents=True, exist_ok=True)

    arith_rows = [row(i, c, "answer(X)", label, "arithmetic")
                  for i, c, label, _ in ARITH]
    arith_lines = []
    for iid, _, _, targets in ARITH:
        arith_lines += arith_script(iid, targets)

    neg_rows = [row(i, c, g, label, "deductive", split)
                for i, c, g, label, split, _ in NEGATION]
    neg_lines = []
    for _, _, _, _, _, script in NEGATION:
        neg_lines += script

    ded_rows = [row(i, c, g, label, "deductive", "proof-no-neg")
                for i, c, g, label, _ in DEDUCTIVE]
    ded_lines = []
    for iid, _, _, _, targets in DEDUCTIVE:
        ded_lines += ded_script(iid, targets)

    rel_rows = [row(i, c, g, label, "relational")
                for i, c, g, label, _ in RELATIONAL]
    rel_lines = []
    for _, _, _, _, script in RELATIONAL:
        rel_lines += script

    write_jsonl(OUT / "arith10.jsonl", arith_rows)
    write_jsonl(OUT / "arith10_script.jsonl", arith_lines)
    write_jsonl(OUT / "negation10.jsonl", neg_rows)
    write_jsonl(OUT / "negation10_script.jsonl", neg_lines)
    write_jsonl(OUT / "bundled40.jsonl",
                ded_rows + neg_rows + rel_rows + arith_rows)
    write_jsonl(OUT / "bundled40_script.jsonl",
                ded_lines + neg_lines + rel_lines + arith_lines)
    print(f"wrote suites under {OUT}")


if __name__ == "__main__":
    main()
