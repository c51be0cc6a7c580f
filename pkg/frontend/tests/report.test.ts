import { beforeEach, describe, expect, it } from 'vitest';

import type { Report } from '../src/api';
import { BAR_MAX_PX, reportView } from '../src/components/reportView';
import { CATALOG, mount } from './helpers';

const REPORT: Report = {
  scenario_id: 'sc1',
  generated_at: '2026-02-03T04:05:06+00:00',
  likert: [
    { statement_id: 's0', counts: [1, 0, 2, 0, 1], n: 4, mean: 3.0, median: 3.0 },
    { statement_id: 's1', counts: [0, 0, 0, 0, 0], n: 0, mean: null, median: null },
  ],
  mood_distribution: {
    excited: { count: 0, fraction: 0 },
    cheerful: { count: 1, fraction: 1 / 6 },
    relaxed: { count: 0, fraction: 0 },
    calm: { count: 2, fraction: 2 / 6 },
    neutral: { count: 0, fraction: 0 },
    bored: { count: 0, fraction: 0 },
    sad: { count: 2, fraction: 2 / 6 },
    irritated: { count: 0, fraction: 0 },
    tense: { count: 1, fraction: 1 / 6 },
  },
  vision_count: 6,
  response_count: 4,
  distinct_participants: 7,
  overall_guess_accuracy: 0.625,
};

describe('report view', () => {
  beforeEach(() => {
    document.body.innerHTML = '';
  });

  it('mood bar heights are proportional to API fractions within 1px', () => {
    mount().append(reportView(REPORT, CATALOG));
    for (const mood of CATALOG) {
      const bar = document.querySelector<HTMLElement>(`.mood-bar[data-mood="${mood.value}"]`)!;
      const height = Number.parseFloat(bar.style.height);
      const expected = REPORT.mood_distribution[mood.value].fraction * BAR_MAX_PX;
      expect(Math.abs(height - expected)).toBeLessThanOrEqual(1);
    }
  });

  it('likert bars scale with counts and show the raw count labels', () => {
    mount().append(reportView(REPORT, CATALOG));
    const chart = document.querySelector('[data-statement="s0"]')!;
    const bars = Array.from(chart.querySelectorAll<HTMLElement>('.likert-bar'));
    const heights = bars.map((bar) => Number.parseFloat(bar.style.height));
    const expected = REPORT.likert[0].counts.map((count) => (count / 4) * BAR_MAX_PX);
    heights.forEach((height, index) => {
      expect(Math.abs(height - expected[index])).toBeLessThanOrEqual(1);
    });
    const labels = Array.from(chart.querySelectorAll('.bar-count')).map((n) => n.textContent);
    expect(labels).toEqual(['1', '0', '2', '0', '1']);
  });

  it('empty statements render zero-height bars without dividing by zero', () => {
    mount().append(reportView(REPORT, CATALOG));
    const chart = document.querySelector('[data-statement="s1"]')!;
    for (const bar of chart.querySelectorAll<HTMLElement>('.likert-bar')) {
      expect(bar.style.height).toBe('0px');
    }
  });

  it('participation numbers come verbatim from the payload', () => {
    mount().append(reportView(REPORT, CATALOG));
    expect(document.querySelector('.stat.responses')!.textContent).toBe('4 survey responses');
    expect(document.querySelector('.stat.visions')!.textContent).toBe('6 visions');
    expect(document.querySelector('.stat.participants')!.textContent).toBe(
      '7 distinct participants',
    );
    expect(document.querySelector('.stat.accuracy')!.textContent).toBe('guess accuracy: 62.5%');
  });

  it('matches the snapshot', () => {
    const view = reportView(REPORT, CATALOG);
    expect(view.outerHTML).toMatchSnapshot();
  });
});
