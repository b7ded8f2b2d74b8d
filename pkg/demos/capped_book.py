"""Walk the capped S_{1,2} book from a positive word to positive support genus.

Run:  python demos/capped_book.py
"""

from obcalc.infer import Fact, run
from obcalc.mcg import classify, parse_word
from obcalc.openbook import cap_off, example_s12

book = example_s12()
print("start:", book)

capped = cap_off(book, "B")
print("cap B:", capped)

# the capped monodromy lives on the once-holed torus, so it has a normal form
nf = classify(parse_word(str(capped.monodromy)))
print("normal form:", nf)

script = {
    "books": {"X": book.to_json()},
    "steps": [{"op": "cap", "from": "X", "label": "B", "as": "Y"}],
    "facts": [{"subject": "X", "predicate": "c1_nontorsion"}],
}
closure = run(script)
goal = Fact("Y", "sg_ge", 1)
print()
print(closure.render(goal))
print()
print("rules used, leaf first:", " > ".join(closure.rule_path(goal)))
