import type { MoodInfo, Report } from '../api';
import { el } from '../dom';

export const BAR_MAX_PX = 120;

const LEVEL_SHORT = ['--', '-', 'o', '+', '++'];

// Renders a report exactly as the API provided it: every displayed number is
// a payload field, and bar heights scale payload fractions onto BAR_MAX_PX.
export function reportView(report: Report, catalog: MoodInfo[]): HTMLElement {
  const likertCharts = report.likert.map((summary, index) => {
    const bars = summary.counts.map((count, level) => {
      const fraction = summary.n > 0 ? count / summary.n : 0;
      const bar = el('div', { class: 'bar likert-bar', 'data-count': String(count) });
      bar.style.height = `${Math.round(fraction * BAR_MAX_PX)}px`;
      return el('div', { class: 'bar-slot' },
        bar,
        el('span', { class: 'bar-count', text: String(count) }),
        el('span', { class: 'bar-label', text: LEVEL_SHORT[level] }),
      );
    });
    return el('div', { class: 'likert-chart', 'data-statement': summary.statement_id },
      el('h4', { text: `Statement ${index + 1}` }),
      el('div', { class: 'bars' }, ...bars),
      el('p', { class: 'likert-meta',
        text: `n=${summary.n}` +
          (summary.mean !== null ? ` · mean ${summary.mean}` : '') +
          (summary.median !== null ? ` · median ${summary.median}` : ''),
      }),
    );
  });

  const moodBars = catalog.map((mood) => {
    const slice = report.mood_distribution[mood.value] ?? { count: 0, fraction: 0 };
    const bar = el('div', { class: 'bar mood-bar', 'data-mood': mood.value });
    bar.style.height = `${Math.round(slice.fraction * BAR_MAX_PX)}px`;
    return el('div', { class: 'bar-slot' },
      bar,
      el('span', { class: 'bar-count', text: String(slice.count) }),
      el('span', { class: 'bar-label', text: mood.value }),
    );
  });

  const accuracy =
    report.overall_guess_accuracy === null
      ? 'no guesses yet'
      : `${(report.overall_guess_accuracy * 100).toFixed(1)}%`;

  return el('section', { class: 'report-view' },
    el('h2', { text: 'Scenario report' }),
    el('div', { class: 'participation' },
      el('p', { class: 'stat responses', text: `${report.response_count} survey responses` }),
      el('p', { class: 'stat visions', text: `${report.vision_count} visions` }),
      el('p', { class: 'stat participants', text: `${report.distinct_participants} distinct participants` }),
      el('p', { class: 'stat accuracy', text: `guess accuracy: ${accuracy}` }),
    ),
    el('h3', { text: 'Pre-survey answers' }),
    el('div', { class: 'likert-charts' }, ...likertCharts),
    el('h3', { text: 'Mood distribution' }),
    el('div', { class: 'bars mood-chart' }, ...moodBars),
  );
}
