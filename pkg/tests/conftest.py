import random

from threatfilter.corpus import Label, LabeledEmail, RawEmail
from threatfilter.model import Model


def email_of(body, subject="", source_id=""):
    headers = (("Subject", subject),) if subject else ()
    return RawEmail(headers=headers, subject=subject, body=body, source_id=source_id)


def labeled(body, label, subject="", source_id=""):
    return LabeledEmail(email_of(body, subject, source_id), label)


MICRO_VOCAB = ("alpha", "bravo", "tango")


def micro_corpus(rng: random.Random, max_emails: int = 20):
    """Small random corpus with both classes.

    Three 5-letter words and messages of at most two words keep the
    candidate feature space at 3 unigrams + 9 bigrams = 12 features.
    """
    n = rng.randint(2, max_emails)
    out = []
    for i in range(n):
        words = [rng.choice(MICRO_VOCAB) for _ in range(rng.randint(1, 2))]
        label = rng.choice((Label.THREAT, Label.SPAM, Label.LEGITIMATE))
        out.append(labeled(" ".join(words), label, source_id=f"m{i}"))
    # force both binary classes to be present
    out[0] = labeled(out[0].email.body, Label.THREAT, source_id="m0")
    out[1] = labeled(out[1].email.body, Label.SPAM, source_id="m1")
    return out


def random_model_and_fv(rng: random.Random):
    """Arbitrary small model plus a feature vector over the same vocabulary."""
    vocab = ["alfa", "brav", "char", "delt", "echo", "foxt", "golf", "hote"]
    features = []
    for _ in range(rng.randint(1, 12)):
        arity = rng.randint(1, 3)
        features.append(tuple(rng.choice(vocab) for _ in range(arity)))
    features = sorted(set(features))
    n_threat = rng.randint(1, 20)
    n_normal = rng.randint(1, 20)
    library = {}
    for f in features:
        hb = rng.randint(0, n_threat)
        hg = rng.randint(0, n_normal)
        if hb + hg == 0:
            hb = 1
        library[f] = (hb, hg)
    selected = [(f, rng.random()) for f in features if rng.random() < 0.8]
    model = Model(n_threat=n_threat, n_normal=n_normal, library=library,
                  selected=selected, config_fingerprint="rnd")
    fv = {}
    for f in features:
        if rng.random() < 0.5:
            fv[f] = rng.randint(1, 3)
    for _ in range(rng.randint(0, 3)):
        fv[(rng.choice(vocab),)] = rng.randint(1, 2)
    return model, fv
