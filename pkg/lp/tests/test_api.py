from django.core.cache import cache
from django.urls import reverse
from rest_framework import status
from rest_framework.test import APITestCase

INSTANCE = {
    'm': 2, 'w': [0.5, 0.5], 'z': [1.0],
    'loads': [{'vcomm': 1.0, 'vcomp': 1.0}, {'vcomm': 1.0, 'vcomp': 1.0}],
}


class SolveViewTest(APITestCase):
    def setUp(self):
        cache.clear()
        self.url = reverse('lp_solve')

    def tearDown(self):
        cache.clear()

    def test_uniform_single_installment(self):
        response = self.client.post(self.url, {'instance': INSTANCE, 'uniform_q': 1}, format='json')

        self.assertEqual(response.status_code, status.HTTP_200_OK)
        data = response.json()
        self.assertLessEqual(data['makespan'], 0.7 + 1e-6)
        self.assertEqual(data['schedule']['q'], [1, 1])
        self.assertIn('comp_end', data['schedule'])

    def test_explicit_counts(self):
        response = self.client.post(self.url, {'instance': INSTANCE, 'installments': [2, 1], 'reduced': True},
                                    format='json')

        self.assertEqual(response.status_code, status.HTTP_200_OK)
        self.assertEqual(response.json()['schedule']['q'], [2, 1])

    def test_needs_exactly_one_count_source(self):
        response = self.client.post(self.url, {'instance': INSTANCE}, format='json')
        self.assertEqual(response.status_code, status.HTTP_400_BAD_REQUEST)

        response = self.client.post(self.url, {'instance': INSTANCE, 'uniform_q': 1, 'installments': [1, 1]},
                                    format='json')
        self.assertEqual(response.status_code, status.HTTP_400_BAD_REQUEST)

    def test_count_mismatch_is_unprocessable(self):
        response = self.client.post(self.url, {'instance': INSTANCE, 'installments': [1]}, format='json')

        self.assertEqual(response.status_code, status.HTTP_422_UNPROCESSABLE_ENTITY)
        self.assertEqual(response.json()['error'], 'index_mismatch')

    def test_invalid_instance_is_unprocessable(self):
        response = self.client.post(self.url, {'instance': dict(INSTANCE, z=[-1.0]), 'uniform_q': 1}, format='json')
        self.assertEqual(response.status_code, status.HTTP_422_UNPROCESSABLE_ENTITY)


class ExportViewTest(APITestCase):
    def setUp(self):
        cache.clear()
        self.url = reverse('lp_export')

    def tearDown(self):
        cache.clear()

    def test_export(self):
        response = self.client.post(self.url, {'instance': INSTANCE, 'uniform_q': 1}, format='json')

        self.assertEqual(response.status_code, status.HTTP_200_OK)
        text = response.json()['lp']
        self.assertTrue(text.startswith('\\'))
        self.assertIn('\nmin\nobj:\n', text)
        self.assertTrue(text.endswith('end\n'))

    def test_time_scale_must_be_positive(self):
        response = self.client.post(self.url, {'instance': INSTANCE, 'uniform_q': 1, 'time_scale': 0}, format='json')
        self.assertEqual(response.status_code, status.HTTP_400_BAD_REQUEST)
