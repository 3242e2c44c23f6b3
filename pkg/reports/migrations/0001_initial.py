# Generated by Django 5.2 on 2026-10-18 09:12

import reports.models
from django.db import migrations, models


class Migration(migrations.Migration):

    initial = True

    dependencies = [
    ]

    operations = [
        migrations.CreateModel(
            name='VerificationRun',
            fields=[
                ('is_active', models.BooleanField(default=True)),
                ('is_deleted', models.BooleanField(default=False)),
                ('created_at', models.DateTimeField(auto_now_add=True)),
                ('updated_at', models.DateTimeField(auto_now=True)),
                ('id', models.CharField(default=reports.models.generate_custom_uuid, editable=False, max_length=12, primary_key=True, serialize=False, unique=True)),
                ('command', models.CharField(max_length=50)),
                ('field', models.JSONField(default=dict)),
                ('parameters', models.JSONField(blank=True, default=dict)),
                ('verdict', models.CharField(choices=[('pass', 'Pass'), ('fail', 'Fail')], max_length=4)),
                ('profile', models.JSONField(blank=True, default=dict)),
                ('witnesses', models.JSONField(blank=True, default=list)),
                ('metadata', models.JSONField(blank=True, default=dict)),
                ('elapsed', models.FloatField(default=0.0)),
            ],
            options={
                'ordering': ['-created_at'],
            },
        ),
    ]
