"""Stemmer checks against the published reference vocabulary.

REFERENCE_PAIRS is a sample of (word, stem) pairs from the reference
vocabulary / output word lists published alongside the algorithm
(verified against three independent ports before being frozen here).
"""

from threatfilter.porter import stem

REFERENCE_PAIRS = [
    # suffix-family examples from the algorithm description
    ("caresses", "caress"), ("ponies", "poni"), ("caress", "caress"),
    ("cats", "cat"), ("plastered", "plaster"), ("bled", "bled"),
    ("motoring", "motor"), ("sing", "sing"), ("conflated", "conflat"),
    ("troubled", "troubl"), ("sized", "size"), ("hopping", "hop"),
    ("tanned", "tan"), ("falling", "fall"), ("hissing", "hiss"),
    ("fizzed", "fizz"), ("failing", "fail"), ("happy", "happi"),
    ("sky", "sky"), ("relational", "relat"), ("conditional", "condit"),
    ("rational", "ration"), ("valency", "valenc"), ("hesitancy", "hesit"),
    ("digitizer", "digit"), ("conformably", "conform"),
    ("radically", "radic"), ("differently", "differ"), ("vilely", "vile"),
    ("analogously", "analog"), ("vietnamization", "vietnam"),
    ("predication", "predic"), ("operator", "oper"),
    ("feudalism", "feudal"), ("hopefulness", "hope"),
    ("formality", "formal"), ("sensitivity", "sensit"),
    ("sensibility", "sensibl"), ("triplicate", "triplic"),
    ("formative", "form"), ("formalize", "formal"),
    ("electricity", "electr"), ("electrical", "electr"),
    ("hopeful", "hope"), ("goodness", "good"), ("revival", "reviv"),
    ("allowance", "allow"), ("inference", "infer"), ("airliner", "airlin"),
    ("gyroscopic", "gyroscop"), ("adjustable", "adjust"),
    ("irritant", "irrit"), ("replacement", "replac"),
    ("adjustment", "adjust"), ("dependent", "depend"),
    ("adoption", "adopt"), ("homologous", "homolog"),
    ("communism", "commun"), ("activate", "activ"),
    ("angularity", "angular"), ("homologies", "homolog"),
    ("effective", "effect"), ("bowdlerize", "bowdler"),
    ("probate", "probat"), ("rate", "rate"), ("controlling", "control"),
    ("rolling", "roll"), ("generalization", "gener"),
    ("oscillators", "oscil"), ("organization", "organ"),
    # common-vocabulary sample
    ("abilities", "abil"), ("absorption", "absorpt"),
    ("according", "accord"), ("account", "account"),
    ("accuracy", "accuraci"), ("achievement", "achiev"),
    ("actually", "actual"), ("additional", "addit"),
    ("administration", "administr"), ("agreements", "agreement"),
    ("alternative", "altern"), ("animal", "anim"),
    ("answered", "answer"), ("apparently", "appar"),
    ("applications", "applic"), ("argument", "argument"),
    ("attacked", "attack"), ("attacks", "attack"),
    ("attention", "attent"), ("authority", "author"),
    ("automatically", "automat"), ("babies", "babi"),
    ("beautiful", "beauti"), ("becomes", "becom"),
    ("beginning", "begin"), ("believed", "believ"), ("bombs", "bomb"),
    ("buildings", "build"), ("capabilities", "capabl"),
    ("careful", "care"), ("carrying", "carri"),
    ("categories", "categori"), ("charges", "charg"),
    ("children", "children"), ("classified", "classifi"),
    ("collection", "collect"), ("comfortable", "comfort"),
    ("considered", "consid"), ("delivery", "deliveri"),
    ("denied", "deni"), ("destruction", "destruct"),
    ("development", "develop"), ("discovered", "discov"),
    ("education", "educ"), ("eliminated", "elimin"),
    ("engineering", "engin"), ("equipped", "equip"),
    ("evaluation", "evalu"), ("explained", "explain"),
    ("fighting", "fight"),
    ("friendly", "friendli"), ("happiness", "happi"),
    ("identified", "identifi"), ("immediately", "immedi"),
    ("independence", "independ"), ("investigated", "investig"),
    ("knowledge", "knowledg"), ("largely", "larg"),
    ("machines", "machin"), ("meetings", "meet"),
    ("necessarily", "necessarili"), ("negotiations", "negoti"),
    ("occupied", "occupi"), ("opportunities", "opportun"),
    ("organizations", "organ"), ("particularly", "particularli"),
    ("performance", "perform"), ("permitted", "permit"),
    ("possibilities", "possibl"), ("presented", "present"),
    ("probably", "probabl"), ("production", "product"),
    ("properties", "properti"), ("recognized", "recogn"),
    ("references", "refer"), ("relations", "relat"),
    ("requirements", "requir"), ("running", "run"),
    ("scientific", "scientif"), ("secretary", "secretari"),
    ("security", "secur"), ("situations", "situat"),
    ("stopped", "stop"), ("strongly", "strongli"),
    ("structures", "structur"), ("studies", "studi"),
    ("suggested", "suggest"), ("supplies", "suppli"),
    ("techniques", "techniqu"), ("tendency", "tendenc"),
    ("threatened", "threaten"), ("transferred", "transfer"),
    ("tried", "tri"), ("troubles", "troubl"),
    ("understanding", "understand"), ("unfortunately", "unfortun"),
    ("urgent", "urgent"), ("variations", "variat"),
    ("violence", "violenc"), ("weapons", "weapon"),
    ("willing", "will"), ("winning", "win"), ("wonderful", "wonder"),
]


def test_reference_pairs():
    assert len(REFERENCE_PAIRS) >= 30
    for word, expected in REFERENCE_PAIRS:
        assert stem(word) == expected, f"{word}: {stem(word)} != {expected}"


def test_idempotent_on_sample():
    for _, expected in REFERENCE_PAIRS:
        assert stem(expected) == expected


def test_short_words_pass_through():
    for word in ("a", "is", "be", "at", "on"):
        assert stem(word) == word


def test_fixed_points():
    for word in ("bomb", "blast", "attack", "threat"):
        assert stem(word) == word
