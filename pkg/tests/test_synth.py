from gsacms.synth import mutate, mutated_copies, random_text, similar_collection


def test_reproducible():
    assert random_text(50, rng=1) == random_text(50, rng=1)
    assert similar_collection(100, 3, 0.1, rng=5) == similar_collection(100, 3, 0.1, rng=5)


def test_mutation_rate():
    seed = random_text(20000, rng=0)
    diff = sum(a != b for a, b in zip(seed, mutate(seed, 0.05, rng=1)))
    # a substitution hits the same letter one time in five
    assert 0.03 < diff / len(seed) < 0.05
    assert mutate(seed, 0.0, rng=2) == seed


def test_copies():
    docs = mutated_copies("ACGT" * 10, 4, 0.1, rng=3)
    assert len(docs) == 4 and all(len(d) == 40 for d in docs)
    assert set("".join(docs)) <= set("ACGTN")
