# -*- coding: utf-8 -*-
"""
本体加载与语义匹配
"""
import pytest
from hypothesis import given, settings, strategies as st

from composition.errors import (
    CyclicTaxonomyError, DuplicateConceptError, MalformedDocument, UnknownConceptError
)
from composition.ontology import expand_coverage, load_taxonomy, matched_inputs, matches


@st.composite
def forests(draw, max_size=12):
    """随机单父节点森林：每个概念的父概念只能是更早的概念"""
    n = draw(st.integers(min_value=1, max_value=max_size))
    concepts = []
    for k in range(n):
        entry = {'id': f"k{k}"}
        if k > 0 and draw(st.booleans()):
            entry['parent'] = f"k{draw(st.integers(min_value=0, max_value=k - 1))}"
        concepts.append(entry)
    return {'concepts': concepts}


class TestLoadTaxonomy:

    def test_flat_concepts_are_their_own_ancestors(self, flat_taxonomy):
        for c in ('c1', 'c2', 'c3', 'c4'):
            assert flat_taxonomy.ancestors[c] == {c}

    def test_chain_closure(self, chain_taxonomy):
        assert chain_taxonomy.ancestors['a'] == {'a', 'b', 'c'}
        assert chain_taxonomy.ancestors['b'] == {'b', 'c'}
        assert chain_taxonomy.ancestors['c'] == {'c'}

    def test_declaration_order_does_not_matter(self):
        t = load_taxonomy({'concepts': [{'id': 'a', 'parent': 'b'}, {'id': 'b', 'parent': 'c'}, {'id': 'c'}]})
        assert t.ancestors['a'] == {'a', 'b', 'c'}

    def test_duplicate_concept(self):
        with pytest.raises(DuplicateConceptError) as excinfo:
            load_taxonomy(['x', 'y', 'x'])
        assert excinfo.value.concept_id == 'x'
        assert excinfo.value.exit_code == 3

    def test_cycle_reports_offending_id(self):
        with pytest.raises(CyclicTaxonomyError) as excinfo:
            load_taxonomy({'concepts': [{'id': 'a', 'parent': 'b'}, {'id': 'b', 'parent': 'a'}]})
        assert excinfo.value.concept_id in ('a', 'b')

    def test_self_parent_is_a_cycle(self):
        with pytest.raises(CyclicTaxonomyError):
            load_taxonomy({'concepts': [{'id': 'a', 'parent': 'a'}]})

    def test_unknown_parent(self):
        with pytest.raises(UnknownConceptError) as excinfo:
            load_taxonomy({'concepts': [{'id': 'a', 'parent': 'ghost'}]})
        assert excinfo.value.concept_id == 'ghost'

    def test_multiple_parents_rejected(self):
        with pytest.raises(MalformedDocument):
            load_taxonomy({'concepts': [{'id': 'p'}, {'id': 'q'}, {'id': 'a', 'parent': ['p', 'q']}]})

    def test_missing_concepts_list(self):
        with pytest.raises(MalformedDocument):
            load_taxonomy({'nodes': []})

    def test_document_round_trip(self, chain_taxonomy):
        again = load_taxonomy(chain_taxonomy.to_document())
        assert again.ancestors == chain_taxonomy.ancestors


class TestMatching:

    def test_identity(self, chain_taxonomy):
        assert matches(chain_taxonomy, 'c', 'c')

    def test_sub_concept_is_directional(self, chain_taxonomy):
        assert matches(chain_taxonomy, 'a', 'b')
        assert not matches(chain_taxonomy, 'b', 'a')

    def test_unrelated_flat_concepts(self, flat_taxonomy):
        assert not matches(flat_taxonomy, 'c1', 'c2')

    def test_unknown_concept(self, flat_taxonomy):
        with pytest.raises(UnknownConceptError):
            matches(flat_taxonomy, 'c1', 'nope')
        with pytest.raises(UnknownConceptError):
            matched_inputs(flat_taxonomy, ['c1'], ['nope'])

    def test_matched_inputs_flat(self, flat_taxonomy):
        assert matched_inputs(flat_taxonomy, {'c1', 'c2'}, {'c1', 'c2', 'c3', 'c4'}) == {'c1', 'c2'}

    def test_matched_inputs_no_outputs(self, flat_taxonomy):
        assert matched_inputs(flat_taxonomy, set(), {'c1', 'c2'}) == frozenset()

    def test_matched_inputs_subsumption(self, chain_taxonomy):
        assert matched_inputs(chain_taxonomy, {'a'}, {'b'}) == {'b'}
        assert matched_inputs(chain_taxonomy, {'c'}, {'b'}) == frozenset()

    def test_expand_coverage_extends_in_place(self, chain_taxonomy):
        covered = {'x'}
        result = expand_coverage(chain_taxonomy, ['b'], covered)
        assert result is covered
        assert covered == {'x', 'b', 'c'}


class TestMatchingProperties:

    @given(forests())
    @settings(max_examples=60, deadline=None)
    def test_reflexive_and_transitive(self, document):
        t = load_taxonomy(document)
        ids = [entry['id'] for entry in document['concepts']]
        for o in ids:
            assert matches(t, o, o)
            for i in t.ancestors[o]:
                for j in t.ancestors[i]:
                    assert matches(t, o, j)

    @given(forests(), st.data())
    @settings(max_examples=60, deadline=None)
    def test_matched_inputs_is_subset_and_monotone(self, document, data):
        t = load_taxonomy(document)
        ids = [entry['id'] for entry in document['concepts']]
        outs = data.draw(st.sets(st.sampled_from(ids)))
        more = data.draw(st.sets(st.sampled_from(ids)))
        ins = data.draw(st.sets(st.sampled_from(ids)))
        base = matched_inputs(t, outs, ins)
        assert base <= ins
        assert base <= matched_inputs(t, outs | more, ins)
        # 并集分配律
        assert matched_inputs(t, outs | more, ins) == base | matched_inputs(t, more, ins)
