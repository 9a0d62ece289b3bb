"""Bundled closed-class word lists and inflection tables.

The caption grammar is deliberately small, so all morphology is table-driven:
no stemming heuristics, no statistical tagging. Unknown words pass through
unchanged, which keeps label normalization stable for open-vocabulary input.
"""

from __future__ import annotations

DETERMINERS = frozenset(
    """
    a an the this that these those some several many few each every
    one two three four five six seven eight nine ten
    """.split()
)

COPULAS = frozenset({"is", "are"})

SUBJECT_PRONOUNS = frozenset({"he", "she", "they"})

# Dropped wherever they appear: they carry no graph content in this grammar.
OBJECT_PRONOUNS = frozenset({"him", "her", "them", "it", "me", "us", "you"})

ADVERBS = frozenset(
    """
    quickly slowly quietly loudly happily sadly carefully gently calmly
    suddenly softly eagerly proudly silently together alone again
    """.split()
)

# Multi-word entries are matched greedily before single-word ones.
PREPOSITIONS_MULTI = (
    ("on", "top", "of"),
    ("in", "front", "of"),
    ("next", "to"),
    ("close", "to"),
)

PREPOSITIONS = frozenset(
    """
    in on at with under over near by behind beside above below into onto
    across through around against inside outside toward towards along atop
    beneath upon beyond past of to
    """.split()
)

EXISTENTIAL = "there"

# Plural -> singular, applied word-wise during label normalization.
NOUN_PLURALS = {
    "men": "man",
    "women": "woman",
    "children": "child",
    "people": "person",
    "persons": "person",
    "babies": "baby",
    "boys": "boy",
    "girls": "girl",
    "dogs": "dog",
    "cats": "cat",
    "horses": "horse",
    "birds": "bird",
    "fish": "fish",
    "cows": "cow",
    "sheep": "sheep",
    "ducks": "duck",
    "guitars": "guitar",
    "drums": "drum",
    "pianos": "piano",
    "violins": "violin",
    "balls": "ball",
    "bats": "bat",
    "bikes": "bike",
    "bicycles": "bicycle",
    "cars": "car",
    "trucks": "truck",
    "buses": "bus",
    "boats": "boat",
    "trains": "train",
    "tables": "table",
    "chairs": "chair",
    "benches": "bench",
    "sofas": "sofa",
    "beds": "bed",
    "stoves": "stove",
    "pots": "pot",
    "pans": "pan",
    "plates": "plate",
    "bowls": "bowl",
    "cups": "cup",
    "glasses": "glass",
    "spoons": "spoon",
    "knives": "knife",
    "forks": "fork",
    "bottles": "bottle",
    "bags": "bag",
    "boxes": "box",
    "books": "book",
    "phones": "phone",
    "cameras": "camera",
    "kites": "kite",
    "frisbees": "frisbee",
    "umbrellas": "umbrella",
    "hats": "hat",
    "shirts": "shirt",
    "shoes": "shoe",
    "dresses": "dress",
    "jackets": "jacket",
    "trees": "tree",
    "flowers": "flower",
    "leaves": "leaf",
    "rocks": "rock",
    "fields": "field",
    "parks": "park",
    "streets": "street",
    "roads": "road",
    "houses": "house",
    "buildings": "building",
    "kitchens": "kitchen",
    "rooms": "room",
    "windows": "window",
    "doors": "door",
    "walls": "wall",
    "crowds": "crowd",
    "teams": "team",
    "groups": "group",
    "stages": "stage",
    "beaches": "beach",
    "waves": "wave",
    "mountains": "mountain",
    "rivers": "river",
    "lakes": "lake",
    "pools": "pool",
    "gardens": "garden",
    "fences": "fence",
    "sandwiches": "sandwich",
    "apples": "apple",
    "cakes": "cake",
    "eggs": "egg",
    "vegetables": "vegetable",
    "onions": "onion",
    "carrots": "carrot",
    "towels": "towel",
    "ropes": "rope",
    "sticks": "stick",
    "toys": "toy",
    "wheels": "wheel",
    "helmets": "helmet",
    "gloves": "glove",
    "microphones": "microphone",
    "speakers": "speaker",
    "screens": "screen",
    "laptops": "laptop",
    "ovens": "oven",
    "counters": "counter",
    "sinks": "sink",
    "candles": "candle",
    "lamps": "lamp",
    "blankets": "blanket",
    "pillows": "pillow",
    "baskets": "basket",
    "ladders": "ladder",
    "horns": "horn",
    "flags": "flag",
    "signs": "sign",
    "crayons": "crayon",
    "fans": "fan",
    "musicians": "musician",
    "singers": "singer",
    "dancers": "dancer",
    "players": "player",
    "chefs": "chef",
    "waiters": "waiter",
    "customers": "customer",
    "artists": "artist",
    "officers": "officer",
    "soldiers": "soldier",
    "students": "student",
    "teachers": "teacher",
}

# base form, third-person singular, present participle, takes-object flag.
_VERB_ROWS = [
    ("cook", "cooks", "cooking", True),
    ("stir", "stirs", "stirring", True),
    ("chop", "chops", "chopping", True),
    ("cut", "cuts", "cutting", True),
    ("slice", "slices", "slicing", True),
    ("pour", "pours", "pouring", True),
    ("eat", "eats", "eating", True),
    ("drink", "drinks", "drinking", True),
    ("feed", "feeds", "feeding", True),
    ("taste", "tastes", "tasting", True),
    ("wash", "washes", "washing", True),
    ("clean", "cleans", "cleaning", True),
    ("hold", "holds", "holding", True),
    ("carry", "carries", "carrying", True),
    ("lift", "lifts", "lifting", True),
    ("throw", "throws", "throwing", True),
    ("catch", "catches", "catching", True),
    ("kick", "kicks", "kicking", True),
    ("hit", "hits", "hitting", True),
    ("push", "pushes", "pushing", True),
    ("pull", "pulls", "pulling", True),
    ("open", "opens", "opening", True),
    ("close", "closes", "closing", True),
    ("wear", "wears", "wearing", True),
    ("ride", "rides", "riding", True),
    ("drive", "drives", "driving", True),
    ("chase", "chases", "chasing", True),
    ("follow", "follows", "following", True),
    ("watch", "watches", "watching", True),
    ("read", "reads", "reading", True),
    ("play", "plays", "playing", True),
    ("paint", "paints", "painting", True),
    ("draw", "draws", "drawing", True),
    ("build", "builds", "building", True),
    ("fix", "fixes", "fixing", True),
    ("touch", "touches", "touching", True),
    ("pet", "pets", "petting", True),
    ("hug", "hugs", "hugging", True),
    ("kiss", "kisses", "kissing", True),
    ("climb", "climbs", "climbing", True),
    ("cross", "crosses", "crossing", True),
    ("enter", "enters", "entering", True),
    ("leave", "leaves", "leaving", True),
    ("pick", "picks", "picking", True),
    ("place", "places", "placing", True),
    ("put", "puts", "putting", True),
    ("serve", "serves", "serving", True),
    ("share", "shares", "sharing", True),
    ("teach", "teaches", "teaching", True),
    ("help", "helps", "helping", True),
    ("wave", "waves", "waving", False),
    ("walk", "walks", "walking", False),
    ("run", "runs", "running", False),
    ("jump", "jumps", "jumping", False),
    ("sit", "sits", "sitting", False),
    ("stand", "stands", "standing", False),
    ("lie", "lies", "lying", False),
    ("sleep", "sleeps", "sleeping", False),
    ("rest", "rests", "resting", False),
    ("dance", "dances", "dancing", False),
    ("sing", "sings", "singing", False),
    ("swim", "swims", "swimming", False),
    ("fly", "flies", "flying", False),
    ("smile", "smiles", "smiling", False),
    ("laugh", "laughs", "laughing", False),
    ("cry", "cries", "crying", False),
    ("talk", "talks", "talking", False),
    ("speak", "speaks", "speaking", False),
    ("shout", "shouts", "shouting", False),
    ("look", "looks", "looking", False),
    ("point", "points", "pointing", False),
    ("cheer", "cheers", "cheering", False),
    ("clap", "claps", "clapping", False),
    ("bark", "barks", "barking", False),
    ("graze", "grazes", "grazing", False),
    ("shine", "shines", "shining", False),
    ("celebrate", "celebrates", "celebrating", False),
    ("sketch", "sketches", "sketching", True),
    ("bounce", "bounces", "bouncing", False),
    ("spin", "spins", "spinning", False),
    ("fall", "falls", "falling", False),
    ("wait", "waits", "waiting", False),
    ("bow", "bows", "bowing", False),
]

BASE_VERBS = frozenset(row[0] for row in _VERB_ROWS)
THIRD_PERSON_TO_BASE = {row[1]: row[0] for row in _VERB_ROWS}
GERUND_TO_BASE = {row[2]: row[0] for row in _VERB_ROWS}
BASE_TO_THIRD = {row[0]: row[1] for row in _VERB_ROWS}
BASE_TO_GERUND = {row[0]: row[2] for row in _VERB_ROWS}
TRANSITIVE_VERBS = frozenset(row[0] for row in _VERB_ROWS if row[3])


def is_finite_verb(token: str) -> bool:
    """True for a base or third-person verb form (not a participle)."""
    return token in BASE_VERBS or token in THIRD_PERSON_TO_BASE


def verb_base(token: str) -> str | None:
    """Base form for any known finite or participle verb form, else None."""
    if token in BASE_VERBS:
        return token
    if token in THIRD_PERSON_TO_BASE:
        return THIRD_PERSON_TO_BASE[token]
    if token in GERUND_TO_BASE:
        return GERUND_TO_BASE[token]
    return None


def singularize(word: str) -> str:
    return NOUN_PLURALS.get(word, word)
